#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ivq::unicode {

/// Decodes the UTF-8 sequence starting at `pos` and advances `pos` past it.
/// Invalid bytes decode as U+FFFD and advance by one byte.
char32_t decode(std::string_view s, std::size_t& pos);

/// Whole-string decode; same invalid-byte policy.
std::u32string decode(std::string_view s);

/// Appends the UTF-8 encoding of `cp` to `out`.
void encode(char32_t cp, std::string& out);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t length(std::string_view s);

bool is_whitespace(char32_t cp);
bool is_ascii_digit(char32_t cp);

/// Punctuation in the sense of BERT-style pre-tokenization: ASCII punctuation
/// plus the common general/CJK punctuation blocks.
bool is_punctuation(char32_t cp);

/// CJK unified ideographs (spaced out as single-character words).
bool is_cjk(char32_t cp);

/// Control characters that BERT-style normalization drops.
bool is_control(char32_t cp);

/// Removes leading and trailing Unicode whitespace.
std::string trim(std::string_view s);

}  // namespace ivq::unicode
