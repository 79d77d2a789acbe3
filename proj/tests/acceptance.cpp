// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <regex>

#include "phonlesson/audio_probe.hpp"
#include "phonlesson/json_io.hpp"
#include "phonlesson/project.hpp"
#include "phonlesson/scheduler.hpp"
#include "phonlesson/smil_codegen.hpp"
#include "phonlesson/timegraph.hpp"
#include "project_fixture.hpp"
#include "smil_check.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace phonlesson;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome listing_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  testkit::TempDir dir;
  testkit::make_listing_project(dir.path());
  const LoadedLesson loaded = load_project(Project{dir.path()});
  if (!loaded.lesson) return fail("fixture did not load");
  const CompileResult result = compile_lesson(*loaded.lesson);
  if (!result.ok()) return fail("fixture did not compile");
  for (const char* needle : {"<par xml:id=\"1\" dur=\"28s\">", "<audio begin=\"1s\"", "<audio begin=\"11s\"",
                             "<audio begin=\"14s\"", "<tev begin=\"3s\"/>", "<a href=\"#1\">", "textFontFamily=",
                             "textColor=", "textFontSize=\"18px\""}) {
    if (result.smil.find(needle) == std::string::npos) return fail(std::string("missing ") + needle);
  }
  const double took = seconds_since(start);
  if (took >= 1.0) return fail("took " + std::to_string(took) + " s");
  return {true, std::to_string(static_cast<int>(took * 1000)) + " ms"};
}

Outcome oracle_round_trip() {
  const auto start = std::chrono::steady_clock::now();
  testkit::Rng rng(1001);
  constexpr int kCases = 1000;
  for (int i = 0; i < kCases; ++i) {
    const Lesson lesson = testkit::random_lesson(rng);
    const Timeline tl = compute_timeline(lesson);
    const std::string why = testkit::compare_timeline(lesson, tl, parse_smil(generate_smil(lesson, tl)));
    if (!why.empty()) return fail("case " + std::to_string(i) + ": " + why);
  }
  const double took = seconds_since(start);
  if (took >= 60.0) return fail("took " + std::to_string(took) + " s");
  return {true, std::to_string(kCases) + " lessons in " + std::to_string(static_cast<int>(took * 1000)) + " ms"};
}

Outcome schedule_conservation() {
  testkit::Rng rng(1002);
  int cases = 0;
  for (int i = 0; i < 2000; ++i) {
    const Lesson lesson = testkit::random_lesson(rng);
    const Timeline tl = compute_timeline(lesson);
    const TimingConfig& t = lesson.timing();
    for (std::size_t k = 0; k < tl.segments.size(); ++k) {
      // Sum the spans the event list reports, slot by slot.
      const Segment& seg = tl.segments[k];
      std::int64_t rule_span = t.defaultDisplayMs;
      std::int64_t examples = 0;
      for (const auto& ev : seg.events) {
        if (ev.kind == EventKind::StartRuleAudio) rule_span = ev.spanMs;
      }
      const Rule& rule = lesson.rules()[k];
      for (const auto& ex : rule.examples) {
        std::int64_t span = t.defaultDisplayMs;
        for (const auto& ev : seg.events) {
          if (ev.kind == EventKind::StartExampleAudio && ev.node == NodeRef::example(rule.id, ex.id)) span = ev.spanMs;
        }
        examples += t.interGapMs + span;
      }
      if (seg.durMs != t.leadInMs + rule_span + examples + t.tailMs) {
        return fail("case " + std::to_string(i) + " segment " + seg.markerId);
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " segments"};
}

ErrorKind kind_of(const std::vector<std::uint8_t>& bytes) {
  try {
    probe_wav(bytes);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

Outcome wav_probe() {
  testkit::Rng rng(1003);
  constexpr int kTuples = 600;
  for (int i = 0; i < kTuples; ++i) {
    const auto rate = static_cast<std::uint32_t>(testkit::uniform(rng, 1000, 96000));
    const auto channels = static_cast<std::uint16_t>(testkit::uniform(rng, 1, 8));
    const auto bits = static_cast<std::uint16_t>(8 * testkit::uniform(rng, 1, 4));
    const auto ms = testkit::uniform(rng, 1, 2000);
    const auto bytes = synthesize_test_wav(ms, rate, channels, bits);
    const AudioClip clip = probe_wav(bytes);
    // Floor formula applied to the data size the header actually carries.
    const std::uint64_t data = bytes[40] | bytes[41] << 8 | bytes[42] << 16 | static_cast<std::uint64_t>(bytes[43]) << 24;
    const auto floor_ms = static_cast<std::int64_t>(data * 1000 / (std::uint64_t{rate} * channels * bits / 8));
    if (clip.durationMs != ms || clip.durationMs != floor_ms || clip.sampleRateHz != rate || clip.channels != channels ||
        clip.bitsPerSample != bits) {
      return fail("tuple " + std::to_string(i) + " probed " + std::to_string(clip.durationMs) + " ms");
    }
  }
  const auto good = synthesize_test_wav(250, 8000, 1, 16);
  int corpus = 0;
  for (std::size_t len = 4; len < good.size(); len += 7) {
    if (kind_of({good.begin(), good.begin() + static_cast<std::ptrdiff_t>(len)}) != ErrorKind::CorruptHeader) {
      return fail("truncation at " + std::to_string(len) + " not CorruptHeader");
    }
    ++corpus;
  }
  auto rifx = good;
  rifx[3] = 'X';
  if (kind_of(rifx) != ErrorKind::NotRiff) return fail("RIFX not NotRiff");
  for (std::uint8_t tag : {2, 3, 6, 7, 0x55}) {
    auto compressed = good;
    compressed[20] = tag;
    if (kind_of(compressed) != ErrorKind::UnsupportedCodec) return fail("format tag " + std::to_string(tag) + " accepted");
    ++corpus;
  }
  return {true, std::to_string(kTuples) + " tuples, " + std::to_string(corpus + 1) + " malformed files"};
}

Outcome styled_text_round_trip() {
  testkit::Rng rng(1004);
  constexpr int kCases = 1500;
  int ipa = 0;
  for (int i = 0; i < kCases; ++i) {
    const StyledText text = testkit::random_styled_text(rng, 6);
    for (char32_t cp : utf8::decode(text.plain_text())) ipa += cp >= 0x250 && cp <= 0x2AF;
    const std::string emitted = emit_xhtml(text);
    const XhtmlParse back = parse_xhtml(emitted);
    if (!(back.text == text)) return fail("case " + std::to_string(i) + ": " + emitted);
    if (emit_xhtml(back.text) != emitted) return fail("emit not a fixed point: " + emitted);
  }
  return {true, std::to_string(kCases) + " values, " + std::to_string(ipa) + " IPA codepoints"};
}

Outcome sph_round_trip() {
  testkit::Rng rng(1005);
  constexpr int kCases = 1000;
  for (int i = 0; i < kCases; ++i) {
    const Lesson lesson = testkit::coin(rng) ? testkit::random_lesson(rng) : testkit::random_edited_lesson(rng);
    const std::string doc = save_sph(lesson);
    const Lesson back = load_sph(doc);
    if (!structurally_equal(back, lesson)) return fail("case " + std::to_string(i) + " differs after load");
    if (save_sph(back) != doc || save_sph(lesson) != doc) return fail("case " + std::to_string(i) + " not deterministic");
  }
  return {true, std::to_string(kCases) + " lessons"};
}

Outcome well_formedness() {
  testkit::Rng rng(1006);
  constexpr int kCases = 500;
  for (int i = 0; i < kCases; ++i) {
    testkit::LessonShape shape;
    shape.maxRules = 20;
    const Lesson lesson = testkit::random_lesson(rng, shape);
    const auto labels = testkit::coin(rng) ? IndexLabelMode::Numbered : IndexLabelMode::RuleText;
    const std::string smil = generate_smil(lesson, compute_timeline(lesson), {}, labels);
    testkit::SmilFacts facts;
    const std::string why = testkit::check_smil(smil, &facts);
    if (!why.empty()) return fail("case " + std::to_string(i) + ": " + why);
    if (facts.hrefs.size() != lesson.rules().size()) return fail("case " + std::to_string(i) + ": index incomplete");
  }
  return {true, std::to_string(kCases) + " documents"};
}

Outcome navigation() {
  testkit::Rng rng(1007);
  int links = 0;
  for (int i = 0; i < 500; ++i) {
    const Lesson lesson = testkit::random_lesson(rng);
    const Timeline tl = compute_timeline(lesson);
    const TimeGraph graph = parse_smil(generate_smil(lesson, tl));
    std::int64_t before = 0;
    for (std::size_t k = 0; k < tl.segments.size(); ++k) {
      if (resolve_link(graph, "#" + std::to_string(k + 1)) != before) {
        return fail("case " + std::to_string(i) + " link #" + std::to_string(k + 1));
      }
      before += tl.segments[k].durMs;
      ++links;
    }
  }
  return {true, std::to_string(links) + " links"};
}

int run(const std::string& command, std::string* out = nullptr) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
    if (out) out->append(buf, n);
  }
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome cli_end_to_end() {
  testkit::TempDir dir;
  const fs::path root = dir.path() / "project";
  fs::create_directories(root / "audio");
  std::filesystem::copy_file(fs::path(PHONLESSON_FIXTURE_DIR) / "listing_lesson" / "lesson.sph", root / "lesson.sph");
  const std::string mkwav = quoted(PHONLESSON_MKWAV);
  for (const auto& [name, ms] : {std::pair{"Regle 1.wav", 9000}, {"Exemple1_R1.wav", 2000}, {"Exemple2_R1.wav", 13000}}) {
    const std::string cmd = mkwav + " " + quoted(root / "audio" / name) + " --duration-ms " + std::to_string(ms) +
                            " --rate 8000 --channels 1 --bits 8";
    if (run(cmd) != 0) return fail(std::string("mkwav failed for ") + name);
  }
  const std::string cli = quoted(PHONLESSON_CLI) + " --project " + quoted(root) + " ";
  if (run(cli + "validate 2>&1") != 0) return fail("validate exited nonzero");
  if (run(cli + "compile 2>&1") != 0) return fail("compile exited nonzero");
  const fs::path smil_path = root / "dist" / "lesson.smil";
  if (!fs::exists(smil_path)) return fail("dist/lesson.smil not written");
  const std::string first = read_file(smil_path);
  std::string json;
  if (run(cli + "inspect", &json) != 0) return fail("inspect exited nonzero");
  const auto total = Json::parse(json).at("totalMs").get<std::int64_t>();
  // Segment durations straight from the file text, whole seconds in this fixture.
  std::int64_t smil_total = 0;
  const std::regex seg_re(R"(<par xml:id="[^"]+" dur="(\d+)s">)");
  for (auto it = std::sregex_iterator(first.begin(), first.end(), seg_re); it != std::sregex_iterator(); ++it) {
    smil_total += std::stoll((*it)[1]) * 1000;
  }
  if (smil_total != total || total != 28000) {
    return fail("inspect totalMs " + std::to_string(total) + " vs SMIL " + std::to_string(smil_total));
  }
  if (run(cli + "compile 2>&1") != 0) return fail("second compile exited nonzero");
  if (read_file(smil_path) != first) return fail("rerun changed dist/lesson.smil");
  return {true, "totalMs " + std::to_string(total)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"listing-reproduction", listing_reproduction},
      {"oracle-round-trip", oracle_round_trip},
      {"schedule-conservation", schedule_conservation},
      {"wav-probe", wav_probe},
      {"styled-text-round-trip", styled_text_round_trip},
      {"sph-round-trip", sph_round_trip},
      {"well-formedness", well_formedness},
      {"navigation", navigation},
      {"cli-end-to-end", cli_end_to_end},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    failures += !outcome.ok;
    std::cout << (outcome.ok ? "PASS " : "FAIL ") << name << (outcome.detail.empty() ? "" : " (" + outcome.detail + ")")
              << "\n";
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
