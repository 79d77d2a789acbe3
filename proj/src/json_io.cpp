#include "phonlesson/json_io.hpp"

#include <cstdio>

#include "phonlesson/utf8.hpp"

namespace phonlesson {

namespace {

Json node_json(const NodeRef& node) {
  Json out{{"rule", node.ruleId}};
  if (node.exampleId) out["example"] = *node.exampleId;
  return out;
}

Json audio_json(const std::optional<AudioClip>& audio) {
  if (!audio) return nullptr;
  Json out{{"src", audio->path}};
  if (audio->probed()) {
    out["durationMs"] = audio->durationMs;
    out["sampleRateHz"] = audio->sampleRateHz;
    out["channels"] = audio->channels;
    out["bitsPerSample"] = audio->bitsPerSample;
  }
  return out;
}

}  // namespace

Json timeline_to_json(const Timeline& timeline) {
  Json segments = Json::array();
  for (const auto& seg : timeline.segments) {
    Json events = Json::array();
    for (const auto& ev : seg.events) {
      events.push_back(Json{{"kind", std::string(to_string(ev.kind))},
                            {"node", node_json(ev.node)},
                            {"relBeginMs", ev.relBeginMs},
                            {"spanMs", ev.spanMs}});
    }
    segments.push_back(Json{{"markerId", seg.markerId},
                            {"beginMs", seg.beginMs},
                            {"durMs", seg.durMs},
                            {"events", std::move(events)}});
  }
  return Json{{"totalMs", timeline.totalMs}, {"segments", std::move(segments)}};
}

Json lesson_to_json(const Lesson& lesson) {
  const TimingConfig& t = lesson.timing();
  Json rules = Json::array();
  for (const auto& rule : lesson.rules()) {
    Json examples = Json::array();
    for (const auto& ex : rule.examples) {
      examples.push_back(Json{{"id", ex.id},
                              {"address", NodeRef::example(rule.id, ex.id).address()},
                              {"text", emit_xhtml(ex.text)},
                              {"audio", audio_json(ex.audio)}});
    }
    rules.push_back(Json{{"id", rule.id},
                         {"address", NodeRef::rule(rule.id).address()},
                         {"text", emit_xhtml(rule.text)},
                         {"audio", audio_json(rule.audio)},
                         {"examples", std::move(examples)}});
  }
  return Json{{"title", emit_xhtml(lesson.title())},
              {"assetBase", lesson.asset_base()},
              {"timing", Json{{"leadInMs", t.leadInMs},
                              {"interGapMs", t.interGapMs},
                              {"tailMs", t.tailMs},
                              {"defaultDisplayMs", t.defaultDisplayMs}}},
              {"rules", std::move(rules)}};
}

Json active_set_to_json(std::int64_t tMs, const ActiveSet& active) {
  Json regions = Json::object();
  for (const auto& [region, chunks] : active.text) regions[region] = chunks;
  return Json{{"t", tMs}, {"text", std::move(regions)}, {"audio", active.audio}};
}

Json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    out.push_back(Json{{"severity", d.severity == Severity::Error ? "error" : "warning"},
                       {"node", d.node},
                       {"message", d.message}});
  }
  return out;
}

Json palette_to_json() {
  Json out = Json::array();
  for (const auto& entry : ipa_palette()) {
    char label[16];
    std::snprintf(label, sizeof label, "U+%04X", static_cast<unsigned>(entry.codepoint));
    std::string ch;
    utf8::append(ch, entry.codepoint);
    out.push_back(Json{{"codepoint", label}, {"char", ch}, {"name", entry.name}});
  }
  return out;
}

}  // namespace phonlesson
