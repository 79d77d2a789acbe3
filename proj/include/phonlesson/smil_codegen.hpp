#pragma once

#include <string>
#include <vector>

#include "phonlesson/lesson.hpp"
#include "phonlesson/scheduler.hpp"

namespace phonlesson {

struct Box {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;

  bool operator==(const Box&) const = default;
};

// Screen layout of a lesson: title band on top, index column on the left,
// rule and example regions stacked on the right.
struct LayoutConfig {
  int rootWidthPx = 1024;
  int rootHeightPx = 768;
  Box title{0, 0, 1024, 80};
  Box index{0, 80, 200, 688};
  Box rule{200, 80, 824, 220};
  Box example{200, 300, 824, 468};
  int indexEntryHeightPx = 40;
  std::string rootBackground = "#FFFFFF";
  std::string titleBackground = "#DCE6F2";
  std::string indexBackground = "#F2F2F2";
  std::string ruleBackground = "#FFFFFF";
  std::string exampleBackground = "#FFFFF0";
};

std::vector<std::string> layout_problems(const LayoutConfig& layout);

enum class IndexLabelMode {
  Numbered,  // "Rule 1", "Rule 2", ...
  RuleText,  // first 24 characters of the rule text
};

inline constexpr const char* kTitleRegion = "Title";
inline constexpr const char* kIndexRegion = "Index";
inline constexpr const char* kRuleRegion = "Regle";
inline constexpr const char* kExampleRegion = "Exemple";

std::string index_region_name(std::size_t position);  // "Index1", ...
Box index_entry_box(const LayoutConfig& layout, std::size_t position);
std::string index_label(const Lesson& lesson, std::size_t position, IndexLabelMode mode);

// SMIL 3.0 Language profile document. Output is byte-deterministic.
// Throws InvalidArgument when the timeline does not belong to the lesson.
std::string generate_smil(const Lesson& lesson, const Timeline& timeline, const LayoutConfig& layout = {},
                          IndexLabelMode labels = IndexLabelMode::Numbered);

// Self-contained HTML page that plays the lesson from its embedded timeline.
std::string export_preview_html(const Lesson& lesson, const Timeline& timeline, const LayoutConfig& layout = {},
                                IndexLabelMode labels = IndexLabelMode::Numbered);

}  // namespace phonlesson
