#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace steerchess::util {

// Number of UTF-8 codepoints (bytes that are not continuation bytes).
std::size_t utf8_length(std::string_view text);

// Replaces accented Latin letters with their base ASCII letter
// (e.g. "Réti" -> "Reti"). Unknown multi-byte sequences pass through.
std::string strip_diacritics(std::string_view text);

// ASCII-only lowercase; multi-byte sequences are left untouched.
std::string ascii_lower(std::string_view text);

std::string trim(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

bool starts_with(std::string_view text, std::string_view prefix);

bool contains_insensitive(std::string_view haystack, std::string_view needle);

}  // namespace steerchess::util
