#include "phonlesson/scheduler.hpp"

namespace phonlesson {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::ShowRuleText: return "showRuleText";
    case EventKind::StartRuleAudio: return "startRuleAudio";
    case EventKind::ShowExampleText: return "showExampleText";
    case EventKind::StartExampleAudio: return "startExampleAudio";
  }
  return "unknown";
}

namespace {

std::int64_t slot_span(const std::optional<AudioClip>& audio, const TimingConfig& timing) {
  return audio ? audio->durationMs : timing.defaultDisplayMs;
}

}  // namespace

Timeline compute_timeline(const Lesson& lesson) {
  auto diagnostics = validate_lesson(lesson);
  if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));

  const TimingConfig& timing = lesson.timing();
  Timeline timeline;
  std::int64_t cursor = 0;
  for (std::size_t k = 0; k < lesson.rules().size(); ++k) {
    const Rule& rule = lesson.rules()[k];
    Segment seg;
    seg.markerId = std::to_string(k + 1);
    seg.beginMs = cursor;

    seg.events.push_back({EventKind::ShowRuleText, NodeRef::rule(rule.id), 0, 0});
    const std::int64_t rule_span = slot_span(rule.audio, timing);
    if (rule.audio) {
      seg.events.push_back({EventKind::StartRuleAudio, NodeRef::rule(rule.id), timing.leadInMs, rule_span});
    }
    std::int64_t slot_end = timing.leadInMs + rule_span;

    std::vector<std::size_t> example_text_events;
    for (const auto& ex : rule.examples) {
      const std::int64_t begin = slot_end + timing.interGapMs;
      const std::int64_t span = slot_span(ex.audio, timing);
      const NodeRef node = NodeRef::example(rule.id, ex.id);
      example_text_events.push_back(seg.events.size());
      seg.events.push_back({EventKind::ShowExampleText, node, begin, 0});
      if (ex.audio) seg.events.push_back({EventKind::StartExampleAudio, node, begin, span});
      slot_end = begin + span;
    }
    seg.durMs = slot_end + timing.tailMs;

    // Text stays up until the segment ends.
    seg.events.front().spanMs = seg.durMs;
    for (std::size_t i : example_text_events) {
      seg.events[i].spanMs = seg.durMs - seg.events[i].relBeginMs;
    }

    cursor += seg.durMs;
    timeline.segments.push_back(std::move(seg));
  }
  timeline.totalMs = cursor;
  return timeline;
}

std::string format_clock(std::int64_t ms) {
  if (ms < 0) throw Error(ErrorKind::InvalidArgument, "clock values are non-negative");
  std::string out = std::to_string(ms / 1000);
  if (const std::int64_t frac = ms % 1000; frac != 0) {
    std::string digits = std::to_string(1000 + frac).substr(1);
    while (digits.back() == '0') digits.pop_back();
    out += '.' + digits;
  }
  out += 's';
  return out;
}

}  // namespace phonlesson
