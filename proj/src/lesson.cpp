#include "phonlesson/lesson.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "phonlesson/utf8.hpp"

namespace phonlesson {

std::vector<std::string> timing_problems(const TimingConfig& t) {
  std::vector<std::string> out;
  auto check = [&out](std::int64_t v, const char* name, bool positive) {
    if (v < 0 || (positive && v == 0)) {
      out.push_back(std::string(name) + (positive ? " must be positive" : " must be non-negative"));
    } else if (v >= TimingConfig::kUpperBoundMs) {
      out.push_back(std::string(name) + " must be below one hour");
    }
  };
  check(t.leadInMs, "lead-in", false);
  check(t.interGapMs, "inter-gap", false);
  check(t.tailMs, "tail", false);
  check(t.defaultDisplayMs, "default display", true);
  return out;
}

const Example* Rule::find_example(int example_id) const {
  for (const auto& ex : examples) {
    if (ex.id == example_id) return &ex;
  }
  return nullptr;
}

std::string NodeRef::describe() const {
  std::string out = "rule " + std::to_string(ruleId);
  if (exampleId) out += " example " + std::to_string(*exampleId);
  return out;
}

std::string NodeRef::address() const {
  std::string out = "r" + std::to_string(ruleId);
  if (exampleId) out += "e" + std::to_string(*exampleId);
  return out;
}

namespace {

std::optional<int> parse_positive(std::string_view s) {
  int v = 0;
  if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v <= 0) return std::nullopt;
  return v;
}

}  // namespace

std::optional<NodeRef> NodeRef::parse_address(std::string_view address) {
  if (address.size() < 2 || address.front() != 'r') return std::nullopt;
  address.remove_prefix(1);
  const auto e = address.find('e');
  if (e == std::string_view::npos) {
    const auto rule = parse_positive(address);
    if (!rule) return std::nullopt;
    return NodeRef::rule(*rule);
  }
  const auto rule = parse_positive(address.substr(0, e));
  const auto example = parse_positive(address.substr(e + 1));
  if (!rule || !example) return std::nullopt;
  return NodeRef::example(*rule, *example);
}

void check_relative_path(std::string_view path, std::string_view what) {
  const std::string label(what);
  if (path.empty()) throw Error(ErrorKind::PathTraversal, label + " path is empty");
  if (path.find('\0') != std::string_view::npos) {
    throw Error(ErrorKind::PathTraversal, label + " path contains NUL");
  }
  if (path.front() == '/' || path.front() == '\\' || (path.size() >= 2 && path[1] == ':')) {
    throw Error(ErrorKind::PathTraversal, label + " path '" + std::string(path) + "' is absolute");
  }
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find_first_of("/\\", start);
    if (end == std::string_view::npos) end = path.size();
    if (path.substr(start, end - start) == "..") {
      throw Error(ErrorKind::PathTraversal, label + " path '" + std::string(path) + "' leaves the asset directory");
    }
    start = end + 1;
  }
}

namespace {

void check_asset_base(std::string_view base) {
  if (!base.empty()) check_relative_path(base, "asset base");
}

void check_clip(const std::optional<AudioClip>& clip) {
  if (clip) check_relative_path(clip->path, "audio");
}

}  // namespace

Lesson Lesson::from_parts(StyledText title, TimingConfig timing, std::string asset_base, std::vector<Rule> rules) {
  check_asset_base(asset_base);
  Lesson lesson(std::move(title));
  lesson.timing_ = timing;
  lesson.assetBase_ = std::move(asset_base);
  std::set<int> rule_ids;
  for (auto& rule : rules) {
    if (rule.id <= 0) throw Error(ErrorKind::InvalidArgument, "rule ids must be positive");
    if (!rule_ids.insert(rule.id).second) {
      throw Error(ErrorKind::DuplicateId, "rule id " + std::to_string(rule.id) + " appears twice");
    }
    check_clip(rule.audio);
    std::set<int> example_ids;
    int last_example = 0;
    for (auto& ex : rule.examples) {
      if (ex.id <= 0) throw Error(ErrorKind::InvalidArgument, "example ids must be positive");
      if (!example_ids.insert(ex.id).second) {
        throw Error(ErrorKind::DuplicateId,
                    "example id " + std::to_string(ex.id) + " appears twice in rule " + std::to_string(rule.id));
      }
      check_clip(ex.audio);
      ex.text = canonicalize(ex.text);
      last_example = std::max(last_example, ex.id);
    }
    rule.text = canonicalize(rule.text);
    lesson.lastRuleId_ = std::max(lesson.lastRuleId_, rule.id);
    lesson.lastExampleId_.push_back(last_example);
    lesson.rules_.push_back(std::move(rule));
  }
  return lesson;
}

const Rule* Lesson::find_rule(int rule_id) const {
  for (const auto& rule : rules_) {
    if (rule.id == rule_id) return &rule;
  }
  return nullptr;
}

const Rule& Lesson::rule(int rule_id) const {
  const Rule* r = find_rule(rule_id);
  if (r == nullptr) throw Error(ErrorKind::UnknownNode, "no rule with id " + std::to_string(rule_id));
  return *r;
}

Rule& Lesson::mutable_rule(int rule_id) {
  return const_cast<Rule&>(rule(rule_id));
}

const Example& Lesson::example(int rule_id, int example_id) const {
  const Example* ex = rule(rule_id).find_example(example_id);
  if (ex == nullptr) {
    throw Error(ErrorKind::UnknownNode, NodeRef::example(rule_id, example_id).describe() + " does not exist");
  }
  return *ex;
}

Example& Lesson::mutable_example(int rule_id, int example_id) {
  return const_cast<Example&>(example(rule_id, example_id));
}

bool Lesson::contains(const NodeRef& node) const {
  const Rule* r = find_rule(node.ruleId);
  if (r == nullptr) return false;
  return !node.exampleId || r->find_example(*node.exampleId) != nullptr;
}

const StyledText& Lesson::text_of(const NodeRef& node) const {
  if (node.exampleId) return example(node.ruleId, *node.exampleId).text;
  return rule(node.ruleId).text;
}

const std::optional<AudioClip>& Lesson::audio_of(const NodeRef& node) const {
  if (node.exampleId) return example(node.ruleId, *node.exampleId).audio;
  return rule(node.ruleId).audio;
}

void Lesson::set_title(StyledText title) { title_ = canonicalize(title); }

void Lesson::set_timing(const TimingConfig& timing) {
  const auto problems = timing_problems(timing);
  if (!problems.empty()) throw Error(ErrorKind::InvalidArgument, problems.front());
  timing_ = timing;
}

void Lesson::set_asset_base(std::string asset_base) {
  check_asset_base(asset_base);
  assetBase_ = std::move(asset_base);
}

int Lesson::add_rule(StyledText text, std::optional<std::size_t> position) {
  const std::size_t at = position.value_or(rules_.size());
  if (at > rules_.size()) {
    throw Error(ErrorKind::PositionOutOfRange,
                "position " + std::to_string(at) + " exceeds rule count " + std::to_string(rules_.size()));
  }
  Rule rule;
  rule.id = ++lastRuleId_;
  rule.text = canonicalize(text);
  const auto offset = static_cast<std::ptrdiff_t>(at);
  rules_.insert(rules_.begin() + offset, std::move(rule));
  lastExampleId_.insert(lastExampleId_.begin() + offset, 0);
  return rules_[at].id;
}

int Lesson::add_example(int rule_id, StyledText text) {
  Rule& r = mutable_rule(rule_id);
  const auto index = static_cast<std::size_t>(&r - rules_.data());
  Example ex;
  ex.id = ++lastExampleId_[index];
  ex.text = canonicalize(text);
  r.examples.push_back(std::move(ex));
  return r.examples.back().id;
}

int Lesson::delete_rule(int rule_id) {
  const Rule& r = rule(rule_id);
  const auto index = static_cast<std::ptrdiff_t>(&r - rules_.data());
  const int removed = 1 + static_cast<int>(r.examples.size());
  rules_.erase(rules_.begin() + index);
  lastExampleId_.erase(lastExampleId_.begin() + index);
  return removed;
}

int Lesson::delete_example(int rule_id, int example_id) {
  Rule& r = mutable_rule(rule_id);
  const auto it = std::find_if(r.examples.begin(), r.examples.end(), [&](const Example& e) { return e.id == example_id; });
  if (it == r.examples.end()) {
    throw Error(ErrorKind::UnknownNode, NodeRef::example(rule_id, example_id).describe() + " does not exist");
  }
  r.examples.erase(it);
  return 1;
}

void Lesson::set_text(const NodeRef& node, StyledText text) {
  if (node.exampleId) {
    mutable_example(node.ruleId, *node.exampleId).text = canonicalize(text);
  } else {
    mutable_rule(node.ruleId).text = canonicalize(text);
  }
}

void Lesson::attach_audio(const NodeRef& node, std::optional<AudioClip> clip) {
  if (!contains(node)) throw Error(ErrorKind::UnknownNode, node.describe() + " does not exist");
  if (clip) {
    if (clip->durationMs <= 0) throw Error(ErrorKind::ZeroDuration, "audio clip for " + node.describe() + " has no duration");
    check_relative_path(clip->path, "audio");
  }
  if (node.exampleId) {
    mutable_example(node.ruleId, *node.exampleId).audio = std::move(clip);
  } else {
    mutable_rule(node.ruleId).audio = std::move(clip);
  }
}

void Lesson::update_probe(const NodeRef& node, const AudioClip& probed) {
  auto& slot = node.exampleId ? mutable_example(node.ruleId, *node.exampleId).audio : mutable_rule(node.ruleId).audio;
  if (!slot) throw Error(ErrorKind::UnknownNode, node.describe() + " has no audio");
  const std::string path = slot->path;
  *slot = probed;
  slot->path = path;
}

Lesson new_lesson(StyledText title) { return Lesson(std::move(title)); }

namespace {

bool same_audio(const std::optional<AudioClip>& a, const std::optional<AudioClip>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || a->path == b->path;
}

}  // namespace

bool structurally_equal(const Lesson& a, const Lesson& b) {
  if (!(a.title() == b.title()) || !(a.timing() == b.timing()) || a.asset_base() != b.asset_base() ||
      a.rules().size() != b.rules().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rules().size(); ++i) {
    const Rule& ra = a.rules()[i];
    const Rule& rb = b.rules()[i];
    if (ra.id != rb.id || !(ra.text == rb.text) || !same_audio(ra.audio, rb.audio) ||
        ra.examples.size() != rb.examples.size()) {
      return false;
    }
    for (std::size_t k = 0; k < ra.examples.size(); ++k) {
      const Example& ea = ra.examples[k];
      const Example& eb = rb.examples[k];
      if (ea.id != eb.id || !(ea.text == eb.text) || !same_audio(ea.audio, eb.audio)) return false;
    }
  }
  return true;
}

namespace {

std::string codepoint_label(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

void check_text(const StyledText& text, const std::string& node, std::vector<Diagnostic>& out) {
  if (!text.has_visible_text()) {
    out.push_back({Severity::Error, node, "text is empty"});
  }
  std::size_t base = 0;
  for (const auto& run : text.runs) {
    for (const auto& v : validate_chars(run.text)) {
      out.push_back({Severity::Error, node,
                     "disallowed character " + codepoint_label(v.codepoint) + " at offset " + std::to_string(base + v.offset)});
    }
    base += utf8::decode(run.text).size();
    if (run.marker) {
      for (const auto& problem : marker_problems(*run.marker)) out.push_back({Severity::Error, node, problem});
    }
  }
}

void check_audio(const std::optional<AudioClip>& audio, const std::string& node, std::vector<Diagnostic>& out) {
  if (audio && !audio->probed()) {
    out.push_back({Severity::Error, node, "audio '" + audio->path + "' has no probed duration"});
  }
}

}  // namespace

std::vector<Diagnostic> validate_lesson(const Lesson& lesson) {
  std::vector<Diagnostic> out;
  for (const auto& problem : timing_problems(lesson.timing())) out.push_back({Severity::Error, "timing", problem});
  check_text(lesson.title(), "title", out);
  if (lesson.rules().empty()) out.push_back({Severity::Error, "lesson", "lesson has no rules"});
  if (lesson.rules().size() > kIndexCapacityWarning) {
    out.push_back({Severity::Warning, "lesson",
                   std::to_string(lesson.rules().size()) + " rules exceed the index column capacity of " +
                       std::to_string(kIndexCapacityWarning)});
  }
  for (const auto& rule : lesson.rules()) {
    const std::string node = NodeRef::rule(rule.id).describe();
    check_text(rule.text, node, out);
    check_audio(rule.audio, node, out);
    if (rule.examples.empty()) out.push_back({Severity::Warning, node, "rule has no examples"});
    for (const auto& ex : rule.examples) {
      const std::string ex_node = NodeRef::example(rule.id, ex.id).describe();
      check_text(ex.text, ex_node, out);
      check_audio(ex.audio, ex_node, out);
    }
  }
  return out;
}

}  // namespace phonlesson
