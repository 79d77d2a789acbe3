// Shared generators and oracle comparisons for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "phonlesson/lesson.hpp"
#include "phonlesson/scheduler.hpp"
#include "phonlesson/timegraph.hpp"
#include "phonlesson/utf8.hpp"

namespace phonlesson::testkit {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// A codepoint from the allowed alphabet, weighted toward letters and IPA.
inline char32_t allowed_codepoint(Rng& rng) {
  struct Range {
    char32_t lo, hi;
  };
  static constexpr Range kRanges[] = {
      {0x61, 0x7A}, {0x20, 0x7E}, {0xA0, 0xFF}, {0x250, 0x2AF}, {0x2B0, 0x2FF}, {0x300, 0x36F}, {0x2010, 0x2027}, {0x0A, 0x0A},
  };
  static constexpr int kWeights[] = {30, 25, 10, 20, 5, 3, 4, 3};
  std::discrete_distribution<int> pick(std::begin(kWeights), std::end(kWeights));
  const Range r = kRanges[pick(rng)];
  return static_cast<char32_t>(uniform(rng, r.lo, r.hi));
}

inline std::string random_string(Rng& rng, int min_len, int max_len) {
  std::string out;
  const auto len = uniform(rng, min_len, max_len);
  for (std::int64_t i = 0; i < len; ++i) utf8::append(out, allowed_codepoint(rng));
  return out;
}

inline Marker random_marker(Rng& rng) {
  static const char* kFamilies[] = {"Arial", "Times New Roman", "Doulos SIL", "Charis SIL", "serif"};
  static const char* kHex = "0123456789abcdefABCDEF";
  Marker m;
  if (coin(rng)) {
    std::string color = "#";
    for (int i = 0; i < 6; ++i) color += kHex[uniform(rng, 0, 21)];
    m.color = color;
  }
  if (coin(rng, 0.4)) m.fontFamily = kFamilies[uniform(rng, 0, 4)];
  if (coin(rng, 0.4)) m.fontSizePx = static_cast<int>(uniform(rng, 6, 96));
  m.bold = coin(rng, 0.3);
  m.italic = coin(rng, 0.3);
  return m;
}

// Canonical styled text whose first run starts with a letter.
inline StyledText random_styled_text(Rng& rng, int max_runs = 5) {
  std::vector<Run> runs;
  const auto n = uniform(rng, 1, max_runs);
  for (std::int64_t i = 0; i < n; ++i) {
    Run run{random_string(rng, 1, 8), std::nullopt};
    if (coin(rng, 0.6)) run.marker = random_marker(rng);
    runs.push_back(std::move(run));
  }
  runs.front().text.insert(runs.front().text.begin(), static_cast<char>('a' + uniform(rng, 0, 25)));
  return canonicalize(std::move(runs));
}

inline std::string random_audio_path(Rng& rng) {
  static const char* kNames[] = {"Regle 1.wav", "ex&1.wav", "say \"hi\".wav", "dir/ʃip.wav", "a<b>.wav", "x.wav"};
  return std::to_string(uniform(rng, 0, 999)) + "_" + kNames[uniform(rng, 0, 5)];
}

inline AudioClip random_clip(Rng& rng, std::int64_t min_ms = 100, std::int64_t max_ms = 30000) {
  AudioClip clip;
  clip.path = random_audio_path(rng);
  clip.durationMs = uniform(rng, min_ms, max_ms);
  clip.sampleRateHz = 16000;
  clip.channels = 1;
  clip.bitsPerSample = 16;
  return clip;
}

inline TimingConfig random_timing(Rng& rng) {
  TimingConfig t;
  t.leadInMs = uniform(rng, 0, 5000);
  t.interGapMs = uniform(rng, 0, 5000);
  t.tailMs = uniform(rng, 0, 5000);
  t.defaultDisplayMs = uniform(rng, 1, 10000);
  return t;
}

struct LessonShape {
  int minRules = 1;
  int maxRules = 10;
  int maxExamples = 5;
  double audioProbability = 0.85;
};

// Compilable lesson with probed audio.
inline Lesson random_lesson(Rng& rng, const LessonShape& shape = {}) {
  Lesson lesson(random_styled_text(rng, 3));
  lesson.set_timing(random_timing(rng));
  lesson.set_asset_base(coin(rng) ? "audio/" : "");
  const auto rules = uniform(rng, shape.minRules, shape.maxRules);
  for (std::int64_t r = 0; r < rules; ++r) {
    const int id = lesson.add_rule(random_styled_text(rng));
    if (coin(rng, shape.audioProbability)) lesson.attach_audio(NodeRef::rule(id), random_clip(rng));
    const auto examples = uniform(rng, 0, shape.maxExamples);
    for (std::int64_t e = 0; e < examples; ++e) {
      const int ex = lesson.add_example(id, random_styled_text(rng));
      if (coin(rng, shape.audioProbability)) lesson.attach_audio(NodeRef::example(id, ex), random_clip(rng));
    }
  }
  return lesson;
}

// Lesson shaped by a random edit script: inserts at random positions and
// deletions, so ids are sparse and out of order. May have zero rules.
inline Lesson random_edited_lesson(Rng& rng) {
  Lesson lesson = new_lesson(coin(rng, 0.9) ? random_styled_text(rng, 3) : StyledText{});
  if (coin(rng)) lesson.set_timing(random_timing(rng));
  lesson.set_asset_base(coin(rng) ? "audio/" : (coin(rng) ? "" : "media/clips/"));
  const auto steps = uniform(rng, 0, 25);
  for (std::int64_t s = 0; s < steps; ++s) {
    const auto& rules = lesson.rules();
    const auto action = uniform(rng, 0, 9);
    if (action <= 3 || rules.empty()) {
      lesson.add_rule(random_styled_text(rng), static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(rules.size()))));
    } else if (action == 4) {
      lesson.delete_rule(rules[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(rules.size()) - 1))].id);
    } else {
      const Rule& r = rules[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(rules.size()) - 1))];
      if (action <= 7) {
        const int ex = lesson.add_example(r.id, random_styled_text(rng));
        if (coin(rng)) lesson.attach_audio(NodeRef::example(r.id, ex), random_clip(rng));
      } else {
        lesson.attach_audio(NodeRef::rule(r.id), coin(rng, 0.8) ? std::optional(random_clip(rng)) : std::nullopt);
      }
    }
  }
  return lesson;
}

inline std::string describe_node_text(const Lesson& lesson, const NodeRef& node) {
  return lesson.text_of(node).plain_text();
}

// Compares a timeline against the simulator's view of the emitted document.
// Returns an empty string on exact agreement, otherwise the first mismatch.
inline std::string compare_timeline(const Lesson& lesson, const Timeline& timeline, const TimeGraph& graph) {
  std::ostringstream why;
  if (graph.totalMs != timeline.totalMs) {
    why << "total " << graph.totalMs << " != " << timeline.totalMs;
    return why.str();
  }
  if (graph.segments.size() != timeline.segments.size()) {
    why << "segment count " << graph.segments.size() << " != " << timeline.segments.size();
    return why.str();
  }
  for (std::size_t i = 0; i < timeline.segments.size(); ++i) {
    const Segment& seg = timeline.segments[i];
    const GraphSegment& gs = graph.segments[i];
    if (gs.markerId != seg.markerId || gs.beginMs != seg.beginMs || gs.durMs != seg.durMs) {
      why << "segment " << i << " (" << gs.markerId << "," << gs.beginMs << "," << gs.durMs << ") != (" << seg.markerId
          << "," << seg.beginMs << "," << seg.durMs << ")";
      return why.str();
    }
    std::vector<const TextItem*> rule_texts, example_texts;
    for (const auto& t : graph.texts) {
      if (t.segment != i) continue;
      if (t.region == "Regle") rule_texts.push_back(&t);
      if (t.region == "Exemple") example_texts.push_back(&t);
    }
    std::vector<const AudioItem*> audios;
    for (const auto& a : graph.audios) {
      if (a.segment == i) audios.push_back(&a);
    }
    std::size_t rt = 0, et = 0, au = 0;
    for (const auto& ev : seg.events) {
      const std::int64_t begin = seg.beginMs + ev.relBeginMs;
      const std::int64_t end = begin + ev.spanMs;
      switch (ev.kind) {
        case EventKind::ShowRuleText:
        case EventKind::ShowExampleText: {
          auto& list = ev.kind == EventKind::ShowRuleText ? rule_texts : example_texts;
          auto& cursor = ev.kind == EventKind::ShowRuleText ? rt : et;
          if (cursor >= list.size()) {
            why << "segment " << i << ": missing text for " << ev.node.describe();
            return why.str();
          }
          const TextItem& t = *list[cursor++];
          if (t.beginMs != begin || t.endMs != end || t.text != describe_node_text(lesson, ev.node)) {
            why << "segment " << i << ": text for " << ev.node.describe() << " at [" << t.beginMs << "," << t.endMs
                << ") expected [" << begin << "," << end << ")";
            return why.str();
          }
          break;
        }
        case EventKind::StartRuleAudio:
        case EventKind::StartExampleAudio: {
          if (au >= audios.size()) {
            why << "segment " << i << ": missing audio for " << ev.node.describe();
            return why.str();
          }
          const AudioItem& a = *audios[au++];
          if (a.beginMs != begin || a.endMs != end || a.src != lesson.audio_of(ev.node)->path) {
            why << "segment " << i << ": audio for " << ev.node.describe() << " at [" << a.beginMs << "," << a.endMs
                << ") expected [" << begin << "," << end << ")";
            return why.str();
          }
          break;
        }
      }
    }
    if (rt != rule_texts.size() || et != example_texts.size() || au != audios.size()) {
      why << "segment " << i << ": simulator has extra items";
      return why.str();
    }
  }
  return {};
}

// The listing lesson: rule audio 9 s, example audio 2 s and 13 s, default timing.
inline Lesson listing_lesson() {
  Marker body{"#000080", "Arial", 16, false, false};
  Marker stress{"#FF0000", "Arial", 18, false, false};
  Lesson lesson(StyledText::plain("Lesson 1"));
  const int rule = lesson.add_rule(canonicalize({{"The vowel ", body}, {"a", stress}, {" is pronounced ...", body}}));
  lesson.attach_audio(NodeRef::rule(rule), AudioClip{"Regle 1.wav", 9000, 8000, 1, 8});
  const int ex1 = lesson.add_example(rule, canonicalize({{"W", body}, {"a", stress}, {"tch", body}}));
  lesson.attach_audio(NodeRef::example(rule, ex1), AudioClip{"Exemple1_R1.wav", 2000, 8000, 1, 8});
  const int ex2 = lesson.add_example(rule, canonicalize({{"B", body}, {"a", stress}, {"th", body}}));
  lesson.attach_audio(NodeRef::example(rule, ex2), AudioClip{"Exemple2_R1.wav", 13000, 8000, 1, 8});
  return lesson;
}

}  // namespace phonlesson::testkit
