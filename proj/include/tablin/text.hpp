#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 text helpers shared by every stage. Strings are UTF-8 throughout;
// code points are decoded with ICU so malformed input never crashes a stage.
namespace tablin::text {

// NFKC, control characters dropped, whitespace runs collapsed to one
// U+0020, leading/trailing whitespace removed.
std::string normalize(std::string_view s);

std::string nfkc(std::string_view s);

bool is_space(char32_t cp);
bool is_control(char32_t cp);

std::vector<char32_t> decode(std::string_view s);
std::string encode(char32_t cp);

// One UTF-8 string per code point.
std::vector<std::string> code_points(std::string_view s);

// Maximal runs of non-whitespace.
std::vector<std::string_view> split_words(std::string_view s);
std::size_t count_words(std::string_view s);

bool has_space(std::string_view s);
bool starts_with_space(std::string_view s);
bool ends_with_space(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::uint64_t fnv1a(std::string_view s);

}  // namespace tablin::text
