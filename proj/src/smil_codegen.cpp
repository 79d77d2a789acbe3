#include "phonlesson/smil_codegen.hpp"

#include <algorithm>
#include <sstream>

#include "phonlesson/utf8.hpp"
#include "phonlesson/xml.hpp"

namespace phonlesson {

namespace {

constexpr std::size_t kIndexLabelChars = 24;

bool inside(const Box& b, int w, int h) {
  return b.left >= 0 && b.top >= 0 && b.width >= 0 && b.height >= 0 && b.left + b.width <= w && b.top + b.height <= h;
}

}  // namespace

std::vector<std::string> layout_problems(const LayoutConfig& layout) {
  std::vector<std::string> out;
  if (layout.rootWidthPx <= 0 || layout.rootHeightPx <= 0) out.push_back("root size must be positive");
  const std::pair<const char*, const Box*> boxes[] = {
      {kTitleRegion, &layout.title}, {kIndexRegion, &layout.index}, {kRuleRegion, &layout.rule}, {kExampleRegion, &layout.example}};
  for (const auto& [name, box] : boxes) {
    if (!inside(*box, layout.rootWidthPx, layout.rootHeightPx)) {
      out.push_back(std::string("region ") + name + " lies outside the root layout");
    }
  }
  if (layout.indexEntryHeightPx <= 0) out.push_back("index entry height must be positive");
  return out;
}

std::string index_region_name(std::size_t position) { return kIndexRegion + std::to_string(position); }

Box index_entry_box(const LayoutConfig& layout, std::size_t position) {
  Box b = layout.index;
  b.top = layout.index.top + static_cast<int>(position - 1) * layout.indexEntryHeightPx;
  // Entries past the bottom of the root are clipped to zero height.
  b.height = std::clamp(layout.rootHeightPx - b.top, 0, layout.indexEntryHeightPx);
  return b;
}

std::string index_label(const Lesson& lesson, std::size_t position, IndexLabelMode mode) {
  if (mode == IndexLabelMode::Numbered) return "Rule " + std::to_string(position);
  std::string text = lesson.rules().at(position - 1).text.plain_text();
  std::replace(text.begin(), text.end(), '\n', ' ');
  return utf8::prefix(text, kIndexLabelChars);
}

namespace {

std::string smil_text_markup(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    out += xml::escape_text(text.substr(start, nl - start));
    if (nl == std::string_view::npos) break;
    out += "<br/>";
    start = nl + 1;
  }
  return out;
}

// Marker fields as smilText attributes, alphabetical.
xml::Attributes text_style(const std::optional<Marker>& marker) {
  xml::Attributes attrs;
  if (!marker) return attrs;
  if (marker->color) attrs.emplace_back("textColor", *marker->color);
  if (marker->fontFamily) attrs.emplace_back("textFontFamily", *marker->fontFamily);
  if (marker->fontSizePx) attrs.emplace_back("textFontSize", std::to_string(*marker->fontSizePx) + "px");
  if (marker->italic) attrs.emplace_back("textFontStyle", "italic");
  if (marker->bold) attrs.emplace_back("textFontWeight", "bold");
  return attrs;
}

std::string paragraph(const StyledText& text) {
  std::string out = "<p>";
  for (const auto& run : text.runs) {
    out += xml::Writer::start_tag("span", text_style(run.marker));
    out += smil_text_markup(run.text);
    out += "</span>";
  }
  out += "</p>";
  return out;
}

xml::Attributes region_attrs(const std::string& name, const Box& b, const std::string& background) {
  xml::Attributes attrs{{"xml:id", name},
                        {"left", std::to_string(b.left)},
                        {"top", std::to_string(b.top)},
                        {"width", std::to_string(b.width)},
                        {"height", std::to_string(b.height)}};
  if (!background.empty()) attrs.emplace_back("backgroundColor", background);
  return attrs;
}

void check_pairing(const Lesson& lesson, const Timeline& timeline) {
  if (timeline.segments.size() != lesson.rules().size()) {
    throw Error(ErrorKind::InvalidArgument, "timeline has " + std::to_string(timeline.segments.size()) +
                                                " segments for " + std::to_string(lesson.rules().size()) + " rules");
  }
}

void emit_segment(xml::Writer& w, const Lesson& lesson, const Segment& seg) {
  w.open("par", {{"xml:id", seg.markerId}, {"dur", format_clock(seg.durMs)}});

  for (const auto& ev : seg.events) {
    if (ev.kind != EventKind::StartRuleAudio && ev.kind != EventKind::StartExampleAudio) continue;
    const auto& clip = lesson.audio_of(ev.node);
    w.empty("audio", {{"begin", format_clock(ev.relBeginMs)}, {"dur", format_clock(ev.spanMs)}, {"src", clip->path}});
  }

  const Event* first_example = nullptr;
  for (const auto& ev : seg.events) {
    if (ev.kind == EventKind::ShowRuleText) {
      w.open("smilText", {{"region", kRuleRegion}});
      w.raw_line(paragraph(lesson.text_of(ev.node)));
      w.close();
    }
  }
  for (const auto& ev : seg.events) {
    if (ev.kind != EventKind::ShowExampleText) continue;
    if (first_example == nullptr) {
      first_example = &ev;
      w.open("smilText", {{"begin", format_clock(ev.relBeginMs)}, {"region", kExampleRegion}});
    } else {
      w.empty("tev", {{"begin", format_clock(ev.relBeginMs - first_example->relBeginMs)}});
    }
    w.raw_line(paragraph(lesson.text_of(ev.node)));
  }
  if (first_example != nullptr) w.close();

  w.close();
}

}  // namespace

std::string generate_smil(const Lesson& lesson, const Timeline& timeline, const LayoutConfig& layout,
                          IndexLabelMode labels) {
  check_pairing(lesson, timeline);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  xml::Writer w(out);
  w.open("smil", {{"xmlns", "http://www.w3.org/ns/SMIL"}, {"version", "3.0"}, {"baseProfile", "Language"}});

  w.open("head");
  w.open("layout");
  w.empty("root-layout", {{"width", std::to_string(layout.rootWidthPx)},
                          {"height", std::to_string(layout.rootHeightPx)},
                          {"backgroundColor", layout.rootBackground}});
  w.empty("region", region_attrs(kTitleRegion, layout.title, layout.titleBackground));
  w.empty("region", region_attrs(kIndexRegion, layout.index, layout.indexBackground));
  w.empty("region", region_attrs(kRuleRegion, layout.rule, layout.ruleBackground));
  w.empty("region", region_attrs(kExampleRegion, layout.example, layout.exampleBackground));
  for (std::size_t k = 1; k <= timeline.segments.size(); ++k) {
    w.empty("region", region_attrs(index_region_name(k), index_entry_box(layout, k), ""));
  }
  w.close();
  w.close();

  const std::string total = format_clock(timeline.totalMs);
  w.open("body");
  w.open("par");
  w.inline_element("smilText", {{"dur", total}, {"region", kTitleRegion}}, paragraph(lesson.title()));
  for (std::size_t k = 1; k <= timeline.segments.size(); ++k) {
    w.open("a", {{"href", "#" + timeline.segments[k - 1].markerId}});
    w.inline_element("smilText", {{"dur", total}, {"region", index_region_name(k)}},
                     smil_text_markup(index_label(lesson, k, labels)));
    w.close();
  }
  w.open("seq");
  for (const auto& seg : timeline.segments) emit_segment(w, lesson, seg);
  w.close();
  w.close();
  w.close();

  w.close();
  return out.str();
}

}  // namespace phonlesson
