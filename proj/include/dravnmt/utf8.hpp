#pragma once

#include <string>
#include <string_view>

namespace dravnmt::utf8 {

// Strict UTF-8 decode. Throws EncodingError on malformed input
// (truncated sequences, overlongs, surrogates, > U+10FFFF).
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view codepoints);
std::string encode_one(char32_t cp);

bool is_valid(std::string_view text);

// Number of codepoints in a valid UTF-8 string.
std::size_t length(std::string_view text);

}  // namespace dravnmt::utf8
