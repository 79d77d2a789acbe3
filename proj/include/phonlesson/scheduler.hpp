#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phonlesson/lesson.hpp"

namespace phonlesson {

enum class EventKind { ShowRuleText, StartRuleAudio, ShowExampleText, StartExampleAudio };

std::string_view to_string(EventKind kind);

struct Event {
  EventKind kind;
  NodeRef node;
  std::int64_t relBeginMs = 0;
  std::int64_t spanMs = 0;

  bool operator==(const Event&) const = default;
};

// One rule with all of its examples: the indivisible unit of navigation.
struct Segment {
  std::string markerId;  // 1-based rule position
  std::int64_t beginMs = 0;
  std::int64_t durMs = 0;
  std::vector<Event> events;

  bool operator==(const Segment&) const = default;
};

struct Timeline {
  std::vector<Segment> segments;
  std::int64_t totalMs = 0;

  bool operator==(const Timeline&) const = default;
};

// Lays out every rule as a segment: rule text for the whole segment, rule
// audio after the lead-in, then each example (text + audio) after a gap.
// Audio-less nodes occupy defaultDisplayMs. Throws ValidationError.
Timeline compute_timeline(const Lesson& lesson);

// SMIL clock value in seconds: "28s", "2.5s", "0.001s".
std::string format_clock(std::int64_t ms);

}  // namespace phonlesson
