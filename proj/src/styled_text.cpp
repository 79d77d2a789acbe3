#include "phonlesson/styled_text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "phonlesson/error.hpp"
#include "phonlesson/utf8.hpp"
#include "phonlesson/xml.hpp"

namespace phonlesson {

StyledText StyledText::plain(std::string text) {
  return canonicalize({Run{std::move(text), std::nullopt}});
}

std::string StyledText::plain_text() const {
  std::string out;
  for (const auto& run : runs) out += run.text;
  return out;
}

bool StyledText::has_visible_text() const {
  for (const auto& run : runs) {
    for (char32_t cp : utf8::decode(run.text)) {
      if (cp != ' ' && cp != '\n' && cp != '\t' && cp != '\r' && cp != 0xA0 && !(cp >= 0x2000 && cp <= 0x200A) &&
          cp != 0x202F && cp != 0x205F) {
        return true;
      }
    }
  }
  return false;
}

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool is_hex_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isxdigit(c) != 0; });
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

StyledText canonicalize(std::vector<Run> runs) {
  StyledText out;
  for (auto& run : runs) {
    if (run.text.empty()) continue;
    if (run.marker) {
      if (run.marker->empty()) {
        run.marker.reset();
      } else if (run.marker->color) {
        run.marker->color = upper(*run.marker->color);
      }
    }
    if (!out.runs.empty() && out.runs.back().marker == run.marker) {
      out.runs.back().text += run.text;
    } else {
      out.runs.push_back(std::move(run));
    }
  }
  return out;
}

std::vector<std::string> marker_problems(const Marker& marker) {
  std::vector<std::string> out;
  if (marker.color && !is_hex_color(*marker.color)) {
    out.push_back("color must be #RRGGBB, got '" + *marker.color + "'");
  }
  if (marker.fontSizePx && (*marker.fontSizePx < 6 || *marker.fontSizePx > 96)) {
    out.push_back("font size must be within 6..96 px, got " + std::to_string(*marker.fontSizePx));
  }
  if (marker.fontFamily) {
    const auto& f = *marker.fontFamily;
    if (trim(f).empty()) out.push_back("font family is empty");
    if (f.find_first_of(";:\"<>\n") != std::string::npos) {
      out.push_back("font family contains a reserved character");
    }
  }
  return out;
}

std::string marker_style(const Marker& m) {
  std::string out;
  auto add = [&out](std::string_view decl) {
    if (!out.empty()) out += ';';
    out += decl;
  };
  if (m.color) add("color:" + *m.color);
  if (m.fontFamily) add("font-family:" + *m.fontFamily);
  if (m.fontSizePx) add("font-size:" + std::to_string(*m.fontSizePx) + "px");
  if (m.bold) add("font-weight:bold");
  if (m.italic) add("font-style:italic");
  return out;
}

namespace {

// Text with newlines rendered as <br/>.
std::string text_markup(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    out += xml::escape_text(text.substr(start, nl - start));
    if (nl == std::string_view::npos) break;
    out += "<br/>";
    start = nl + 1;
  }
  return out;
}

}  // namespace

std::string emit_xhtml(const StyledText& st) {
  std::string out = "<p>";
  for (const auto& run : st.runs) {
    if (run.marker && !run.marker->empty()) {
      out += "<span style=\"" + xml::escape_attribute(marker_style(*run.marker)) + "\">";
    } else {
      out += "<span>";
    }
    out += text_markup(run.text);
    out += "</span>";
  }
  out += "</p>";
  return out;
}

namespace {

void apply_style(std::string_view style, Marker& marker, std::vector<std::string>& warnings) {
  std::size_t start = 0;
  while (start <= style.size()) {
    auto end = style.find(';', start);
    if (end == std::string_view::npos) end = style.size();
    const std::string decl = trim(style.substr(start, end - start));
    start = end + 1;
    if (decl.empty()) continue;
    const auto colon = decl.find(':');
    if (colon == std::string::npos) {
      warnings.push_back("ignored malformed style declaration '" + decl + "'");
      continue;
    }
    const std::string prop = trim(std::string_view(decl).substr(0, colon));
    const std::string value = trim(std::string_view(decl).substr(colon + 1));
    if (prop == "color") {
      if (is_hex_color(value)) {
        marker.color = upper(value);
      } else {
        warnings.push_back("ignored color value '" + value + "'");
      }
    } else if (prop == "font-family") {
      if (value.empty()) {
        warnings.push_back("ignored empty font-family");
      } else {
        marker.fontFamily = value;
      }
    } else if (prop == "font-size") {
      int px = 0;
      const bool has_px = value.size() > 2 && value.ends_with("px");
      const auto digits = std::string_view(value).substr(0, has_px ? value.size() - 2 : 0);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), px);
      if (has_px && ec == std::errc() && ptr == digits.data() + digits.size() && px >= 6 && px <= 96) {
        marker.fontSizePx = px;
      } else {
        warnings.push_back("ignored font-size value '" + value + "'");
      }
    } else if (prop == "font-weight") {
      if (value == "bold") {
        marker.bold = true;
      } else if (value == "normal") {
        marker.bold = false;
      } else {
        warnings.push_back("ignored font-weight value '" + value + "'");
      }
    } else if (prop == "font-style") {
      if (value == "italic") {
        marker.italic = true;
      } else if (value == "normal") {
        marker.italic = false;
      } else {
        warnings.push_back("ignored font-style value '" + value + "'");
      }
    } else {
      warnings.push_back("ignored unknown style property '" + prop + "'");
    }
  }
}

void collect_inline(const xml::Node& node, const Marker& inherited, std::vector<Run>& runs,
                    std::vector<std::string>& warnings) {
  for (const auto& child : node.children) {
    if (child.is_text()) {
      runs.push_back(Run{child.text, inherited});
      continue;
    }
    if (child.name == "br") {
      if (!child.children.empty()) throw Error(ErrorKind::MalformedMarkup, "<br> must be empty");
      runs.push_back(Run{"\n", inherited});
    } else if (child.name == "span") {
      Marker marker = inherited;
      for (const auto& [key, value] : child.attributes) {
        if (key == "style") {
          apply_style(value, marker, warnings);
        } else {
          warnings.push_back("ignored span attribute '" + key + "'");
        }
      }
      collect_inline(child, marker, runs, warnings);
    } else {
      throw Error(ErrorKind::DisallowedElement, "element <" + child.name + "> is not allowed");
    }
  }
}

}  // namespace

XhtmlParse parse_xhtml(std::string_view fragment) {
  xml::Node root;
  try {
    root = xml::parse("<fragment>" + std::string(fragment) + "</fragment>");
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedMarkup, e.what());
  }

  XhtmlParse result;
  std::vector<Run> runs;
  bool first_paragraph = true;
  for (const auto& child : root.children) {
    if (child.is_text()) {
      if (!trim(child.text).empty()) {
        throw Error(ErrorKind::MalformedMarkup, "text outside <p>");
      }
      continue;
    }
    if (child.name != "p") {
      throw Error(ErrorKind::DisallowedElement, "element <" + child.name + "> is not allowed");
    }
    for (const auto& attr : child.attributes) {
      result.warnings.push_back("ignored p attribute '" + attr.first + "'");
    }
    if (!first_paragraph) runs.push_back(Run{"\n", std::nullopt});
    first_paragraph = false;
    collect_inline(child, Marker{}, runs, result.warnings);
  }
  result.text = canonicalize(std::move(runs));
  return result;
}

bool is_allowed_char(char32_t cp) {
  if (cp == '\n') return true;
  if (cp >= 0x20 && cp <= 0x7E) return true;     // Basic Latin printable
  if (cp >= 0xA0 && cp <= 0xFF) return true;     // Latin-1 letters and punctuation
  if (cp >= 0x250 && cp <= 0x2AF) return true;   // IPA Extensions
  if (cp >= 0x2B0 && cp <= 0x2FF) return true;   // Spacing Modifier Letters
  if (cp >= 0x300 && cp <= 0x36F) return true;   // Combining Diacritical Marks
  if (cp >= 0x2000 && cp <= 0x200A) return true; // spaces
  if (cp >= 0x2010 && cp <= 0x2027) return true; // dashes, quotes, ellipsis
  if (cp >= 0x202F && cp <= 0x205F) return true;
  return false;
}

std::vector<CharViolation> validate_chars(std::string_view text) {
  std::vector<CharViolation> out;
  const auto cps = utf8::decode(text);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (!is_allowed_char(cps[i])) out.push_back({i, cps[i]});
  }
  return out;
}

}  // namespace phonlesson
