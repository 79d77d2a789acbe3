#include <charconv>
#include <sstream>

#include "phonlesson/lesson.hpp"
#include "phonlesson/xml.hpp"

namespace phonlesson {

namespace {

constexpr std::string_view kSchemaVersion = "1.0";

std::string runs_markup(const StyledText& text) {
  std::string out;
  for (const auto& run : text.runs) {
    xml::Attributes attrs;
    if (run.marker) {
      const Marker& m = *run.marker;
      if (m.color) attrs.emplace_back("color", *m.color);
      if (m.fontFamily) attrs.emplace_back("font-family", *m.fontFamily);
      if (m.fontSizePx) attrs.emplace_back("font-size-px", std::to_string(*m.fontSizePx));
      if (m.bold) attrs.emplace_back("font-weight", "bold");
      if (m.italic) attrs.emplace_back("font-style", "italic");
    }
    out += xml::Writer::start_tag("span", attrs);
    std::size_t start = 0;
    while (true) {
      const auto nl = run.text.find('\n', start);
      out += xml::escape_text(std::string_view(run.text).substr(start, nl - start));
      if (nl == std::string::npos) break;
      out += "<br/>";
      start = nl + 1;
    }
    out += "</span>";
  }
  return out;
}

std::string audio_markup(const std::optional<AudioClip>& audio) {
  if (!audio) return {};
  return xml::Writer::start_tag("audio", {{"src", audio->path}}, true);
}

}  // namespace

std::string save_sph(const Lesson& lesson) {
  std::ostringstream out;
  xml::Writer w(out);
  w.open("lesson", {{"version", std::string(kSchemaVersion)}, {"asset-base", lesson.asset_base()}});
  const TimingConfig& t = lesson.timing();
  w.empty("timing", {{"lead-in-ms", std::to_string(t.leadInMs)},
                     {"inter-gap-ms", std::to_string(t.interGapMs)},
                     {"tail-ms", std::to_string(t.tailMs)},
                     {"default-display-ms", std::to_string(t.defaultDisplayMs)}});
  w.inline_element("title", {}, runs_markup(lesson.title()));
  for (const auto& rule : lesson.rules()) {
    w.open("rule", {{"id", std::to_string(rule.id)}});
    w.inline_element("text", {}, runs_markup(rule.text));
    if (rule.audio) w.raw_line(audio_markup(rule.audio));
    for (const auto& ex : rule.examples) {
      w.inline_element("example", {{"id", std::to_string(ex.id)}},
                       "<text>" + runs_markup(ex.text) + "</text>" + audio_markup(ex.audio));
    }
    w.close();
  }
  w.close();
  return out.str();
}

namespace {

[[noreturn]] void malformed(const xml::Node& at, const std::string& message) {
  throw Error(ErrorKind::MalformedXml, message + " (line " + std::to_string(at.line) + ")");
}

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

const std::string& required(const xml::Node& node, std::string_view key) {
  const std::string* v = node.attribute(key);
  if (v == nullptr) malformed(node, "<" + node.name + "> lacks attribute '" + std::string(key) + "'");
  return *v;
}

std::int64_t int_attribute(const xml::Node& node, std::string_view key, std::int64_t fallback) {
  const std::string* v = node.attribute(key);
  if (v == nullptr) return fallback;
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc() || ptr != v->data() + v->size()) {
    malformed(node, "attribute '" + std::string(key) + "' is not an integer");
  }
  return out;
}

int id_attribute(const xml::Node& node) {
  const auto id = int_attribute(node, "id", 0);
  if (node.attribute("id") == nullptr || id <= 0 || id > 1'000'000'000) {
    malformed(node, "<" + node.name + "> needs a positive id");
  }
  return static_cast<int>(id);
}

void collect_span_text(const xml::Node& span, std::string& out) {
  for (const auto& child : span.children) {
    if (child.is_text()) {
      out += child.text;
    } else if (child.name == "br") {
      out += '\n';
    } else {
      malformed(child, "unexpected <" + child.name + "> inside <span>");
    }
  }
}

StyledText read_runs(const xml::Node& container) {
  std::vector<Run> runs;
  for (const auto& child : container.children) {
    if (child.is_text()) {
      if (!is_blank(child.text)) malformed(container, "text outside <span>");
      continue;
    }
    if (child.name != "span") malformed(child, "unexpected <" + child.name + "> in text");
    Marker m;
    if (const auto* v = child.attribute("color")) m.color = *v;
    if (const auto* v = child.attribute("font-family")) m.fontFamily = *v;
    if (child.attribute("font-size-px") != nullptr) {
      m.fontSizePx = static_cast<int>(int_attribute(child, "font-size-px", 0));
    }
    if (const auto* v = child.attribute("font-weight")) {
      if (*v != "bold" && *v != "normal") malformed(child, "font-weight must be bold or normal");
      m.bold = *v == "bold";
    }
    if (const auto* v = child.attribute("font-style")) {
      if (*v != "italic" && *v != "normal") malformed(child, "font-style must be italic or normal");
      m.italic = *v == "italic";
    }
    Run run;
    collect_span_text(child, run.text);
    if (!m.empty()) run.marker = m;
    runs.push_back(std::move(run));
  }
  return canonicalize(std::move(runs));
}

std::optional<AudioClip> read_audio(const xml::Node& node) {
  AudioClip clip;
  clip.path = required(node, "src");
  check_relative_path(clip.path, "audio");
  return clip;
}

Example read_example(const xml::Node& node) {
  Example ex;
  ex.id = id_attribute(node);
  bool has_text = false;
  for (const xml::Node* child : node.elements()) {
    if (child->name == "text" && !has_text) {
      ex.text = read_runs(*child);
      has_text = true;
    } else if (child->name == "audio" && !ex.audio) {
      ex.audio = read_audio(*child);
    } else {
      malformed(*child, "unexpected <" + child->name + "> in <example>");
    }
  }
  return ex;
}

Rule read_rule(const xml::Node& node) {
  Rule rule;
  rule.id = id_attribute(node);
  bool has_text = false;
  for (const xml::Node* child : node.elements()) {
    if (child->name == "text" && !has_text) {
      rule.text = read_runs(*child);
      has_text = true;
    } else if (child->name == "audio" && !rule.audio) {
      rule.audio = read_audio(*child);
    } else if (child->name == "example") {
      rule.examples.push_back(read_example(*child));
    } else {
      malformed(*child, "unexpected <" + child->name + "> in <rule>");
    }
  }
  return rule;
}

}  // namespace

Lesson load_sph(std::string_view document) {
  const xml::Node root = xml::parse(document);
  if (root.name != "lesson") malformed(root, "root element must be <lesson>");
  const std::string* version = root.attribute("version");
  if (version == nullptr || *version != kSchemaVersion) {
    throw Error(ErrorKind::UnknownSchemaVersion,
                "unsupported .sph version '" + (version ? *version : std::string("(none)")) + "'");
  }
  std::string asset_base;
  if (const auto* base = root.attribute("asset-base")) asset_base = *base;

  TimingConfig timing;
  StyledText title;
  std::vector<Rule> rules;
  for (const auto& child : root.children) {
    if (child.is_text()) {
      if (!is_blank(child.text)) malformed(root, "stray text in <lesson>");
      continue;
    }
    if (child.name == "timing") {
      timing.leadInMs = int_attribute(child, "lead-in-ms", timing.leadInMs);
      timing.interGapMs = int_attribute(child, "inter-gap-ms", timing.interGapMs);
      timing.tailMs = int_attribute(child, "tail-ms", timing.tailMs);
      timing.defaultDisplayMs = int_attribute(child, "default-display-ms", timing.defaultDisplayMs);
      const auto problems = timing_problems(timing);
      if (!problems.empty()) malformed(child, problems.front());
    } else if (child.name == "title") {
      title = read_runs(child);
    } else if (child.name == "rule") {
      rules.push_back(read_rule(child));
    } else {
      malformed(child, "unexpected <" + child.name + "> in <lesson>");
    }
  }
  return Lesson::from_parts(std::move(title), timing, std::move(asset_base), std::move(rules));
}

}  // namespace phonlesson
