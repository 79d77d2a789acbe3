#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace phonlesson {

// Resolved timing of a SMIL document in the subset the code generator emits.
// All intervals are half-open [beginMs, endMs) in absolute milliseconds.
struct TextItem {
  std::string region;
  std::int64_t beginMs = 0;
  std::int64_t endMs = 0;
  std::string text;
  std::optional<std::size_t> segment;  // index into TimeGraph::segments

  bool operator==(const TextItem&) const = default;
};

struct AudioItem {
  std::string src;
  std::int64_t beginMs = 0;
  std::int64_t endMs = 0;
  std::optional<std::size_t> segment;

  bool operator==(const AudioItem&) const = default;
};

struct GraphSegment {
  std::string markerId;
  std::int64_t beginMs = 0;
  std::int64_t durMs = 0;
};

struct Link {
  std::string href;
  std::string target;  // xml:id the fragment points at
  std::string label;
};

struct TimeGraph {
  std::vector<GraphSegment> segments;  // par children of a seq, in order
  std::vector<TextItem> texts;         // document order; tev chunks are separate items
  std::vector<AudioItem> audios;
  std::vector<Link> links;
  std::map<std::string, std::int64_t> anchors;  // timed xml:id -> absolute begin
  std::set<std::string> regions;
  std::int64_t totalMs = 0;
};

// Clock values: "12s", "2.5s", "1500ms", "2min", "1h", or bare seconds.
// Throws BadClockValue unless the value is a whole number of milliseconds.
std::int64_t parse_clock(std::string_view value);

// Throws UnknownElement, BadClockValue, DanglingHref, UndeclaredRegion,
// SubsetViolation or MalformedXml.
TimeGraph parse_smil(std::string_view document);

struct ActiveSet {
  std::map<std::string, std::vector<std::string>> text;  // region -> visible chunks
  std::vector<std::string> audio;                        // playing sources

  bool operator==(const ActiveSet&) const = default;
};

// Throws OutOfRange unless 0 <= tMs < totalMs.
ActiveSet active_at(const TimeGraph& graph, std::int64_t tMs);

// Seek time for an index link such as "#2". Throws DanglingHref.
std::int64_t resolve_link(const TimeGraph& graph, std::string_view fragment);

// One line per transition: "t=<ms> <kind> <target>", ordered by time with
// endings before beginnings at the same instant.
std::string event_trace(const TimeGraph& graph);

}  // namespace phonlesson
