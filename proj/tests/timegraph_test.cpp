#include <gtest/gtest.h>

#include "phonlesson/scheduler.hpp"
#include "phonlesson/smil_codegen.hpp"
#include "phonlesson/timegraph.hpp"
#include "support.hpp"

namespace phonlesson {
namespace {

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

TimeGraph listing_graph() {
  const Lesson lesson = testkit::listing_lesson();
  return parse_smil(generate_smil(lesson, compute_timeline(lesson)));
}

std::string wrap(const std::string& regions, const std::string& body) {
  return "<smil xmlns=\"http://www.w3.org/ns/SMIL\" version=\"3.0\"><head><layout>" + regions +
         "</layout></head><body>" + body + "</body></smil>";
}

TEST(ParseClock, Grammar) {
  EXPECT_EQ(parse_clock("2.5s"), 2500);
  EXPECT_EQ(parse_clock("28s"), 28000);
  EXPECT_EQ(parse_clock("0.001s"), 1);
  EXPECT_EQ(parse_clock("1500ms"), 1500);
  EXPECT_EQ(parse_clock("2min"), 120000);
  EXPECT_EQ(parse_clock("1h"), 3600000);
  EXPECT_EQ(parse_clock("3"), 3000);
  for (const char* bad : {"", "s", "1.0001s", "-1s", "1.5ms", "abc", "1 s", "1e3s", ".5s", "5.s"}) {
    EXPECT_EQ(error_of([&] { parse_clock(bad); }), ErrorKind::BadClockValue) << bad;
  }
}

TEST(ParseSmil, ListingLesson) {
  const TimeGraph g = listing_graph();
  ASSERT_EQ(g.segments.size(), 1u);
  EXPECT_EQ(g.segments[0].markerId, "1");
  EXPECT_EQ(g.segments[0].beginMs, 0);
  EXPECT_EQ(g.segments[0].durMs, 28000);
  ASSERT_EQ(g.audios.size(), 3u);
  EXPECT_EQ(g.audios[0].beginMs, 1000);
  EXPECT_EQ(g.audios[1].beginMs, 11000);
  EXPECT_EQ(g.audios[2].beginMs, 14000);
  EXPECT_EQ(g.totalMs, 28000);
}

TEST(ParseSmil, HandWrittenParAndSeq) {
  const std::string doc = wrap("<region xml:id=\"R\"/>",
                               "<seq>"
                               "<par xml:id=\"a\" dur=\"2s\"><audio begin=\"500ms\" dur=\"1s\" src=\"x.wav\"/></par>"
                               "<par xml:id=\"b\" dur=\"4s\"><audio begin=\"1s\" dur=\"3s\" src=\"y.wav\"/>"
                               "<smilText region=\"R\" begin=\"0.25s\">one<tev begin=\"1.5s\"/>two</smilText></par>"
                               "</seq>");
  const TimeGraph g = parse_smil(doc);
  ASSERT_EQ(g.segments.size(), 2u);
  EXPECT_EQ(g.segments[1].beginMs, 2000);
  EXPECT_EQ(g.segments[1].durMs, 4000);
  EXPECT_EQ(g.totalMs, 6000);
  ASSERT_EQ(g.audios.size(), 2u);
  EXPECT_EQ(g.audios[0].beginMs, 500);
  EXPECT_EQ(g.audios[1].beginMs, 3000);
  EXPECT_EQ(g.audios[1].endMs, 6000);
  ASSERT_EQ(g.texts.size(), 2u);
  EXPECT_EQ(g.texts[0], (TextItem{"R", 2250, 6000, "one", 1}));
  EXPECT_EQ(g.texts[1], (TextItem{"R", 3750, 6000, "two", 1}));
}

TEST(ParseSmil, ImplicitParEndFromLongestChild) {
  const TimeGraph g = parse_smil(wrap("", "<seq><par xml:id=\"1\"><audio begin=\"1s\" dur=\"3s\" src=\"y\"/>"
                                          "<audio dur=\"2s\" src=\"z\"/></par><par xml:id=\"2\" dur=\"1s\"/></seq>"));
  EXPECT_EQ(g.segments.at(0).durMs, 4000);
  EXPECT_EQ(g.anchors.at("2"), 4000);
  EXPECT_EQ(g.totalMs, 5000);
}

TEST(ParseSmil, UntimedTextNeedsExplicitParent) {
  EXPECT_EQ(error_of([&] { parse_smil(wrap("<region xml:id=\"R\"/>", "<par><smilText region=\"R\">x</smilText></par>")); }),
            ErrorKind::SubsetViolation);
  EXPECT_EQ(error_of([&] { parse_smil(wrap("", "<seq dur=\"1s\"/>")); }), ErrorKind::SubsetViolation);
}

TEST(ParseSmil, AudioIsClippedToParent) {
  const TimeGraph g = parse_smil(wrap("", "<seq><par xml:id=\"1\" dur=\"1s\"><audio begin=\"0.5s\" dur=\"2s\" src=\"x\"/></par></seq>"));
  EXPECT_EQ(g.audios.at(0).endMs, 1000);
}

TEST(ParseSmil, Errors) {
  EXPECT_EQ(error_of([&] { parse_smil(wrap("", "<a href=\"#9\"><seq/></a>")); }), ErrorKind::DanglingHref);
  EXPECT_EQ(error_of([&] { parse_smil(wrap("", "<video src=\"x\"/>")); }), ErrorKind::UnknownElement);
  EXPECT_EQ(error_of([&] { parse_smil(wrap("", "<par dur=\"1s\"><smilText region=\"Nope\">x</smilText></par>")); }),
            ErrorKind::UndeclaredRegion);
  EXPECT_EQ(error_of([&] { parse_smil(wrap("", "<par dur=\"1x\"/>")); }), ErrorKind::BadClockValue);
  EXPECT_EQ(error_of([&] { parse_smil("<smil><head>"); }), ErrorKind::MalformedXml);
  EXPECT_EQ(error_of([&] { parse_smil("<html/>"); }), ErrorKind::UnknownElement);
}

TEST(ActiveAt, ListingQueries) {
  const TimeGraph g = listing_graph();
  const ActiveSet start = active_at(g, 0);
  EXPECT_EQ(start.text.at("Regle"), std::vector<std::string>{"The vowel a is pronounced ..."});
  EXPECT_FALSE(start.text.count("Exemple"));
  EXPECT_TRUE(start.audio.empty());

  const ActiveSet mid = active_at(g, 12000);
  EXPECT_EQ(mid.text.at("Regle").size(), 1u);
  EXPECT_EQ(mid.text.at("Exemple"), std::vector<std::string>{"Watch"});
  EXPECT_EQ(mid.audio, std::vector<std::string>{"Exemple1_R1.wav"});

  // Example text accumulates until the segment ends.
  EXPECT_EQ(active_at(g, 27999).text.at("Exemple"), (std::vector<std::string>{"Watch", "Bath"}));
  EXPECT_TRUE(active_at(g, 13000).audio.empty());
  EXPECT_EQ(error_of([&] { active_at(g, 28000); }), ErrorKind::OutOfRange);
  EXPECT_EQ(error_of([&] { active_at(g, -1); }), ErrorKind::OutOfRange);
}

TEST(ResolveLink, Fragments) {
  Lesson lesson = testkit::listing_lesson();
  lesson.add_rule(StyledText::plain("second"));
  const TimeGraph g = parse_smil(generate_smil(lesson, compute_timeline(lesson)));
  EXPECT_EQ(resolve_link(g, "#1"), 0);
  EXPECT_EQ(resolve_link(g, "#2"), 28000);
  EXPECT_EQ(error_of([&] { resolve_link(g, "#zz"); }), ErrorKind::DanglingHref);
  EXPECT_EQ(error_of([&] { resolve_link(g, "2"); }), ErrorKind::DanglingHref);
}

TEST(EventTrace, ListingGolden) {
  const char* const expected =
      "t=0 show Title \"Lesson 1\"\n"
      "t=0 show Index1 \"Rule 1\"\n"
      "t=0 show Regle \"The vowel a is pronounced ...\"\n"
      "t=1000 play Regle 1.wav\n"
      "t=10000 stop Regle 1.wav\n"
      "t=11000 show Exemple \"Watch\"\n"
      "t=11000 play Exemple1_R1.wav\n"
      "t=13000 stop Exemple1_R1.wav\n"
      "t=14000 show Exemple \"Bath\"\n"
      "t=14000 play Exemple2_R1.wav\n"
      "t=27000 stop Exemple2_R1.wav\n"
      "t=28000 hide Title \"Lesson 1\"\n"
      "t=28000 hide Index1 \"Rule 1\"\n"
      "t=28000 hide Regle \"The vowel a is pronounced ...\"\n"
      "t=28000 hide Exemple \"Watch\"\n"
      "t=28000 hide Exemple \"Bath\"\n";
  EXPECT_EQ(event_trace(listing_graph()), expected);
}

TEST(OracleEquivalence, RandomLessons) {
  testkit::Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Lesson lesson = testkit::random_lesson(rng);
    const Timeline tl = compute_timeline(lesson);
    const TimeGraph g = parse_smil(generate_smil(lesson, tl));
    ASSERT_EQ(testkit::compare_timeline(lesson, tl, g), "");
  }
}

TEST(OracleEquivalence, BoundariesAndLinks) {
  testkit::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    testkit::LessonShape shape;
    shape.minRules = 2;
    const Lesson lesson = testkit::random_lesson(rng, shape);
    const Timeline tl = compute_timeline(lesson);
    const TimeGraph g = parse_smil(generate_smil(lesson, tl));
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < tl.segments.size(); ++k) {
      ASSERT_EQ(resolve_link(g, "#" + std::to_string(k + 1)), sum);
      // At a segment's first instant only its own rule text is showing.
      const ActiveSet at = active_at(g, sum);
      ASSERT_EQ(at.text.at("Regle"), std::vector<std::string>{lesson.rules()[k].text.plain_text()});
      ASSERT_FALSE(at.text.count("Exemple"));
      const auto& rule_audio = lesson.rules()[k].audio;
      if (lesson.timing().leadInMs == 0 && rule_audio) {
        ASSERT_EQ(at.audio, std::vector<std::string>{rule_audio->path});
      } else {
        ASSERT_TRUE(at.audio.empty());
      }
      sum += tl.segments[k].durMs;
    }
  }
}

}  // namespace
}  // namespace phonlesson
