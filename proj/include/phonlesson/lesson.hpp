#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonlesson/audio_probe.hpp"
#include "phonlesson/error.hpp"
#include "phonlesson/styled_text.hpp"

namespace phonlesson {

struct TimingConfig {
  std::int64_t leadInMs = 1000;
  std::int64_t interGapMs = 1000;
  std::int64_t tailMs = 1000;
  std::int64_t defaultDisplayMs = 3000;  // span of a node without audio

  static constexpr std::int64_t kUpperBoundMs = 3'600'000;

  bool operator==(const TimingConfig&) const = default;
};

std::vector<std::string> timing_problems(const TimingConfig& timing);

struct Example {
  int id = 0;
  StyledText text;
  std::optional<AudioClip> audio;
};

struct Rule {
  int id = 0;
  StyledText text;
  std::optional<AudioClip> audio;
  std::vector<Example> examples;

  const Example* find_example(int example_id) const;
};

// Addresses a rule, or an example inside a rule.
struct NodeRef {
  int ruleId = 0;
  std::optional<int> exampleId;

  static NodeRef rule(int id) { return NodeRef{id, std::nullopt}; }
  static NodeRef example(int rule_id, int example_id) { return NodeRef{rule_id, example_id}; }

  // "rule 2" / "rule 2 example 1"
  std::string describe() const;
  // URL form used by the HTTP API: "r2" / "r2e1"
  std::string address() const;
  static std::optional<NodeRef> parse_address(std::string_view address);

  bool operator==(const NodeRef&) const = default;
};

// Throws PathTraversal for empty, absolute or parent-escaping paths.
void check_relative_path(std::string_view path, std::string_view what);

// The lesson document tree. Rule ids increase monotonically and are never
// reused within a lesson's lifetime; example ids likewise within their rule.
class Lesson {
 public:
  Lesson() = default;
  explicit Lesson(StyledText title) : title_(canonicalize(title)) {}

  // Restores a stored lesson; throws DuplicateId or PathTraversal.
  static Lesson from_parts(StyledText title, TimingConfig timing, std::string asset_base, std::vector<Rule> rules);

  const StyledText& title() const { return title_; }
  const TimingConfig& timing() const { return timing_; }
  const std::string& asset_base() const { return assetBase_; }
  const std::vector<Rule>& rules() const { return rules_; }

  const Rule* find_rule(int rule_id) const;
  // Throws UnknownNode.
  const Rule& rule(int rule_id) const;
  const Example& example(int rule_id, int example_id) const;
  const StyledText& text_of(const NodeRef& node) const;
  const std::optional<AudioClip>& audio_of(const NodeRef& node) const;
  bool contains(const NodeRef& node) const;

  void set_title(StyledText title);
  void set_timing(const TimingConfig& timing);
  void set_asset_base(std::string asset_base);

  // Inserts at `position` (default: append). Returns the new rule id.
  int add_rule(StyledText text, std::optional<std::size_t> position = std::nullopt);
  int add_example(int rule_id, StyledText text);
  // Removes the rule and its examples; returns the number of removed nodes.
  int delete_rule(int rule_id);
  int delete_example(int rule_id, int example_id);
  void set_text(const NodeRef& node, StyledText text);
  // Overwrites the node's audio; std::nullopt detaches it.
  void attach_audio(const NodeRef& node, std::optional<AudioClip> clip);

  // Replaces probe data for an existing audio reference (path unchanged).
  void update_probe(const NodeRef& node, const AudioClip& probed);

 private:
  Rule& mutable_rule(int rule_id);
  Example& mutable_example(int rule_id, int example_id);

  StyledText title_;
  TimingConfig timing_;
  std::string assetBase_;
  std::vector<Rule> rules_;
  int lastRuleId_ = 0;
  // Indexed parallel to rules_.
  std::vector<int> lastExampleId_;
};

Lesson new_lesson(StyledText title);

// Compares everything persisted in .sph: title, timing, asset base, rule and
// example ids, order, runs, markers and audio paths.
bool structurally_equal(const Lesson& a, const Lesson& b);

// Compile-time checks. Errors block compilation; warnings are lint.
std::vector<Diagnostic> validate_lesson(const Lesson& lesson);

// Lessons with more rules than this draw index entries beyond the column.
inline constexpr std::size_t kIndexCapacityWarning = 15;

// .sph serialization (UTF-8 XML dialect, schema version 1.0).
std::string save_sph(const Lesson& lesson);
// Throws MalformedXml, UnknownSchemaVersion, DuplicateId or PathTraversal.
Lesson load_sph(std::string_view document);

}  // namespace phonlesson
