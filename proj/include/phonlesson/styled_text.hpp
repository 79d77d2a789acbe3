#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phonlesson {

// Typographic marker on a run of text. Absent fields inherit the region default.
struct Marker {
  std::optional<std::string> color;  // "#RRGGBB", uppercase after canonicalization
  std::optional<std::string> fontFamily;
  std::optional<int> fontSizePx;     // 6..96
  bool bold = false;
  bool italic = false;

  bool empty() const { return !color && !fontFamily && !fontSizePx && !bold && !italic; }
  bool operator==(const Marker&) const = default;
};

struct Run {
  std::string text;
  std::optional<Marker> marker;

  bool operator==(const Run&) const = default;
};

struct StyledText {
  std::vector<Run> runs;

  static StyledText plain(std::string text);

  std::string plain_text() const;
  // True when at least one run contains a non-whitespace character.
  bool has_visible_text() const;
  bool operator==(const StyledText&) const = default;
};

// Drops empty runs, normalizes empty markers to none, uppercases colors and
// merges adjacent runs with identical markers.
StyledText canonicalize(std::vector<Run> runs);
inline StyledText canonicalize(const StyledText& st) { return canonicalize(st.runs); }

// Problems with a marker's field values (empty when valid).
std::vector<std::string> marker_problems(const Marker& marker);

// One <p> with one <span> per run. Newlines become <br/>.
std::string emit_xhtml(const StyledText& st);

struct XhtmlParse {
  StyledText text;
  std::vector<std::string> warnings;
};

// Accepts only p, span and br. Throws MalformedMarkup or DisallowedElement.
XhtmlParse parse_xhtml(std::string_view fragment);

// CSS declaration list for a marker, properties in fixed order.
std::string marker_style(const Marker& marker);

struct CharViolation {
  std::size_t offset;  // codepoint index
  char32_t codepoint;

  bool operator==(const CharViolation&) const = default;
};

bool is_allowed_char(char32_t cp);
std::vector<CharViolation> validate_chars(std::string_view text);

struct PaletteEntry {
  char32_t codepoint;
  const char* name;
};

const std::vector<PaletteEntry>& ipa_palette();

}  // namespace phonlesson
