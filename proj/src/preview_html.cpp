#include <nlohmann/json.hpp>

#include "phonlesson/smil_codegen.hpp"
#include "phonlesson/xml.hpp"

namespace phonlesson {

namespace {

using nlohmann::ordered_json;

ordered_json box_json(const Box& b, const std::string& background) {
  return ordered_json{{"left", b.left}, {"top", b.top}, {"width", b.width}, {"height", b.height}, {"background", background}};
}

// Script-safe JSON: "</" cannot close the surrounding <script> element.
std::string embed(const ordered_json& data) {
  std::string text = data.dump();
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '<' && i + 1 < text.size() && text[i + 1] == '/') {
      out += "<\\/";
      ++i;
    } else {
      out += text[i];
    }
  }
  return out;
}

constexpr const char* kPlayerScript = R"JS(
(function () {
  "use strict";
  var data = JSON.parse(document.getElementById("lesson-data").textContent);
  var stage = document.getElementById("stage");
  var clock = document.getElementById("clock");
  var scrub = document.getElementById("scrub");
  var playButton = document.getElementById("play");
  var regions = {};
  var audios = [];
  var t = 0;
  var playing = false;
  var lastTick = 0;

  function place(name, box) {
    var div = document.createElement("div");
    div.className = "region region-" + name;
    div.style.left = box.left + "px";
    div.style.top = box.top + "px";
    div.style.width = box.width + "px";
    div.style.height = box.height + "px";
    div.style.background = box.background;
    stage.appendChild(div);
    regions[name] = div;
    return div;
  }

  stage.style.width = data.layout.root.width + "px";
  stage.style.height = data.layout.root.height + "px";
  stage.style.background = data.layout.root.background;
  place("Title", data.layout.title).innerHTML = data.title;
  place("Index", data.layout.index);
  place("Regle", data.layout.rule);
  place("Exemple", data.layout.example);

  data.index.forEach(function (entry, k) {
    var div = place("Index" + (k + 1), entry.box);
    var link = document.createElement("a");
    link.href = "#" + entry.target;
    link.textContent = entry.label;
    link.addEventListener("click", function (e) {
      e.preventDefault();
      seek(entry.beginMs);
    });
    div.appendChild(link);
  });

  data.segments.forEach(function (seg) {
    seg.audio.forEach(function (item) {
      var el = new Audio(item.src);
      el.preload = "auto";
      audios.push({ el: el, begin: seg.beginMs + item.relBeginMs, span: item.spanMs });
    });
  });

  scrub.max = data.totalMs;

  function segmentAt(time) {
    for (var i = 0; i < data.segments.length; i++) {
      var s = data.segments[i];
      if (time >= s.beginMs && time < s.beginMs + s.durMs) return i;
    }
    return -1;
  }

  function syncAudio() {
    audios.forEach(function (a) {
      var active = playing && t >= a.begin && t < a.begin + a.span;
      if (active) {
        var offset = (t - a.begin) / 1000;
        if (a.el.paused) {
          a.el.currentTime = offset;
          a.el.play().catch(function () {});
        } else if (Math.abs(a.el.currentTime - offset) > 0.25) {
          a.el.currentTime = offset;
        }
      } else if (!a.el.paused) {
        a.el.pause();
      }
    });
  }

  function render() {
    var i = segmentAt(t);
    var rule = "";
    var examples = "";
    if (i >= 0) {
      var seg = data.segments[i];
      var rel = t - seg.beginMs;
      rule = seg.ruleHtml;
      seg.examples.forEach(function (ex) {
        if (ex.relBeginMs <= rel) examples += ex.html;
      });
    }
    regions.Regle.innerHTML = rule;
    regions.Exemple.innerHTML = examples;
    data.index.forEach(function (entry, k) {
      regions["Index" + (k + 1)].classList.toggle("current", k === i);
    });
    scrub.value = t;
    clock.textContent = (t / 1000).toFixed(1) + " / " + (data.totalMs / 1000).toFixed(1) + " s";
    syncAudio();
  }

  function seek(time) {
    t = Math.max(0, Math.min(time, data.totalMs));
    lastTick = performance.now();
    render();
  }

  function tick(now) {
    if (!playing) return;
    t += now - lastTick;
    lastTick = now;
    if (t >= data.totalMs) {
      t = data.totalMs;
      playing = false;
      playButton.textContent = "Play";
    }
    render();
    if (playing) requestAnimationFrame(tick);
  }

  playButton.addEventListener("click", function () {
    playing = !playing;
    playButton.textContent = playing ? "Pause" : "Play";
    if (playing) {
      if (t >= data.totalMs) t = 0;
      lastTick = performance.now();
      requestAnimationFrame(tick);
    }
    render();
  });
  scrub.addEventListener("input", function () { seek(Number(scrub.value)); });

  render();
})();
)JS";

}  // namespace

std::string export_preview_html(const Lesson& lesson, const Timeline& timeline, const LayoutConfig& layout,
                                IndexLabelMode labels) {
  if (timeline.segments.size() != lesson.rules().size()) {
    throw Error(ErrorKind::InvalidArgument, "timeline does not belong to this lesson");
  }
  ordered_json data;
  data["totalMs"] = timeline.totalMs;
  data["title"] = emit_xhtml(lesson.title());
  data["layout"] = ordered_json{
      {"root", ordered_json{{"width", layout.rootWidthPx}, {"height", layout.rootHeightPx}, {"background", layout.rootBackground}}},
      {"title", box_json(layout.title, layout.titleBackground)},
      {"index", box_json(layout.index, layout.indexBackground)},
      {"rule", box_json(layout.rule, layout.ruleBackground)},
      {"example", box_json(layout.example, layout.exampleBackground)}};

  data["index"] = ordered_json::array();
  data["segments"] = ordered_json::array();
  for (std::size_t k = 1; k <= timeline.segments.size(); ++k) {
    const Segment& seg = timeline.segments[k - 1];
    data["index"].push_back(ordered_json{{"label", index_label(lesson, k, labels)},
                                         {"target", seg.markerId},
                                         {"beginMs", seg.beginMs},
                                         {"box", box_json(index_entry_box(layout, k), "")}});
    ordered_json s{{"id", seg.markerId}, {"beginMs", seg.beginMs}, {"durMs", seg.durMs}};
    s["examples"] = ordered_json::array();
    s["audio"] = ordered_json::array();
    for (const auto& ev : seg.events) {
      switch (ev.kind) {
        case EventKind::ShowRuleText:
          s["ruleHtml"] = emit_xhtml(lesson.text_of(ev.node));
          break;
        case EventKind::ShowExampleText:
          s["examples"].push_back(ordered_json{{"relBeginMs", ev.relBeginMs}, {"html", emit_xhtml(lesson.text_of(ev.node))}});
          break;
        case EventKind::StartRuleAudio:
        case EventKind::StartExampleAudio:
          s["audio"].push_back(ordered_json{
              {"src", lesson.audio_of(ev.node)->path}, {"relBeginMs", ev.relBeginMs}, {"spanMs", ev.spanMs}});
          break;
      }
    }
    data["segments"].push_back(std::move(s));
  }

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + xml::escape_text(lesson.title().plain_text()) + "</title>\n";
  out += "<style>\n"
         "body { font-family: sans-serif; margin: 16px; }\n"
         "#stage { position: relative; border: 1px solid #888; overflow: hidden; }\n"
         ".region { position: absolute; box-sizing: border-box; padding: 6px; overflow: hidden; }\n"
         ".region p { margin: 0 0 6px 0; }\n"
         ".region a { color: #1A4D8F; text-decoration: none; }\n"
         ".region.current a { font-weight: bold; }\n"
         "#controls { margin-top: 8px; display: flex; gap: 8px; align-items: center; }\n"
         "#scrub { flex: 1; }\n"
         "</style>\n</head>\n<body>\n";
  out += "<div id=\"stage\"></div>\n";
  out += "<div id=\"controls\"><button id=\"play\" type=\"button\">Play</button>"
         "<input id=\"scrub\" type=\"range\" min=\"0\" step=\"1\" value=\"0\"><span id=\"clock\"></span></div>\n";
  out += "<script type=\"application/json\" id=\"lesson-data\">" + embed(data) + "</script>\n";
  out += "<script>";
  out += kPlayerScript;
  out += "</script>\n</body>\n</html>\n";
  return out;
}

}  // namespace phonlesson
