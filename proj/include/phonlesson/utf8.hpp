#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phonlesson::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes into codepoints; each malformed byte sequence yields one kReplacement.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// First `count` codepoints of `text` (fewer if the text is shorter).
std::string prefix(std::string_view text, std::size_t count);

}  // namespace phonlesson::utf8
