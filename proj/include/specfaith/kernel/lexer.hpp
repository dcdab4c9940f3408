#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "specfaith/kernel/errors.hpp"

namespace specfaith {

enum class TokenKind : std::uint8_t {
  ident, integer, char_lit, string_lit, punct, end,
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;           // identifier, punctuation, or raw integer digits
  std::uint64_t magnitude = 0;  // integer literals (digits only, no sign)
  bool magnitude_overflow = false;
  std::u32string str;  // decoded char/string literal
  SourceSpan span;

  bool is(std::string_view punct) const { return kind == TokenKind::punct && text == punct; }
  bool is_ident(std::string_view word) const { return kind == TokenKind::ident && text == word; }
};

/// Splits UTF-8 source into tokens. Line comments, block comments and
/// attributes (`#[...]`, `#![...]`) are dropped.
std::vector<Token> tokenize(std::string_view source);

/// Encodes one code point as UTF-8.
void append_utf8(std::string& out, char32_t c);
std::string to_utf8(const std::u32string& s);

}  // namespace specfaith
