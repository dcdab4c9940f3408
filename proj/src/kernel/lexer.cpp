#include "specfaith/kernel/lexer.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace specfaith {

namespace {

// Longest match first.
constexpr std::array<std::string_view, 38> kPuncts{
    "&&&", "|||", "==>", "<==>", "::", "->", "=>", "==", "!=", "<=", ">=", "&&", "||", "..",
    "{",   "}",   "(",   ")",    "[",  "]",  ",",  ";",  ":",  ".",  "<",  ">",  "=",  "+",
    "-",   "*",   "/",   "%",    "!",  "|",  "&",  "#",  "?",  "@",
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      if (peek() == '#' && (peek(1) == '[' || (peek(1) == '!' && peek(2) == '['))) {
        skip_attribute();
        continue;
      }
      out.push_back(next_token());
    }
    Token end;
    end.kind = TokenKind::end;
    end.span = here();
    out.push_back(end);
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  SourceSpan here() const { return {line_, col_}; }

  void advance() {
    if (at_end()) return;
    const auto c = static_cast<unsigned char>(src_[pos_++]);
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;  // count code points, not continuation bytes
    }
  }

  void skip_trivia() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (peek() == '/' && peek(1) == '*') {
        const SourceSpan start = here();
        advance();
        advance();
        int depth = 1;
        while (depth > 0) {
          if (at_end()) throw SyntaxError("unterminated block comment", start);
          if (peek() == '/' && peek(1) == '*') {
            advance();
            advance();
            ++depth;
          } else if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            --depth;
          } else {
            advance();
          }
        }
        continue;
      }
      return;
    }
  }

  void skip_attribute() {
    const SourceSpan start = here();
    while (peek() != '[') advance();
    int depth = 0;
    do {
      if (at_end()) throw SyntaxError("unterminated attribute", start);
      if (peek() == '[') ++depth;
      if (peek() == ']') --depth;
      advance();
    } while (depth > 0);
  }

  char32_t decode_utf8() {
    const SourceSpan start = here();
    const auto lead = static_cast<unsigned char>(peek());
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      throw SyntaxError("invalid UTF-8 byte", start);
    }
    advance();
    for (int i = 0; i < extra; ++i) {
      const auto c = static_cast<unsigned char>(peek());
      if ((c & 0xC0) != 0x80) throw SyntaxError("invalid UTF-8 sequence", start);
      cp = (cp << 6) | (c & 0x3F);
      advance();
    }
    return cp;
  }

  char32_t read_escape() {
    const SourceSpan start = here();
    advance();  // backslash
    const char c = peek();
    advance();
    switch (c) {
      case 'n': return U'\n';
      case 't': return U'\t';
      case 'r': return U'\r';
      case '0': return U'\0';
      case '\\': return U'\\';
      case '\'': return U'\'';
      case '"': return U'"';
      case 'u': {
        if (peek() != '{') throw SyntaxError("malformed unicode escape", start, "`{`");
        advance();
        char32_t cp = 0;
        int digits = 0;
        while (std::isxdigit(static_cast<unsigned char>(peek()))) {
          const char d = peek();
          cp = cp * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(d))
                                                   ? d - '0'
                                                   : std::tolower(d) - 'a' + 10);
          advance();
          if (++digits > 6) throw SyntaxError("unicode escape too long", start);
        }
        if (peek() != '}' || digits == 0) throw SyntaxError("malformed unicode escape", start);
        advance();
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
          throw SyntaxError("invalid unicode scalar value", start);
        }
        return cp;
      }
      default: throw SyntaxError(std::string("unknown escape `\\") + c + "`", start);
    }
  }

  Token next_token() {
    Token tok;
    tok.span = here();
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = TokenKind::ident;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        tok.text += peek();
        advance();
      }
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = TokenKind::integer;
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') {
        const char d = peek();
        tok.text += d;
        advance();
        if (d == '_') continue;
        const auto digit = static_cast<std::uint64_t>(d - '0');
        if (tok.magnitude > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
          tok.magnitude_overflow = true;
        } else {
          tok.magnitude = tok.magnitude * 10 + digit;
        }
      }
      // Rust-style suffixes such as `5usize` or `3i64`.
      if (std::isalpha(static_cast<unsigned char>(peek()))) {
        std::string suffix;
        while (std::isalnum(static_cast<unsigned char>(peek()))) {
          suffix += peek();
          advance();
        }
        tok.text += suffix;
      }
      return tok;
    }
    if (c == '\'') {
      tok.kind = TokenKind::char_lit;
      advance();
      if (peek() == '\'' || at_end()) throw SyntaxError("empty char literal", tok.span);
      tok.str.push_back(peek() == '\\' ? read_escape() : decode_utf8());
      if (peek() != '\'') throw SyntaxError("unterminated char literal", tok.span, "`'`");
      advance();
      return tok;
    }
    if (c == '"') {
      tok.kind = TokenKind::string_lit;
      advance();
      while (peek() != '"') {
        if (at_end()) throw SyntaxError("unterminated string literal", tok.span, "`\"`");
        tok.str.push_back(peek() == '\\' ? read_escape() : decode_utf8());
      }
      advance();
      return tok;
    }
    for (std::string_view p : kPuncts) {
      if (src_.substr(pos_, p.size()) == p) {
        tok.kind = TokenKind::punct;
        tok.text = std::string(p);
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return tok;
      }
    }
    throw SyntaxError(std::string("unexpected character `") + c + "`", tok.span);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
}

std::string to_utf8(const std::u32string& s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

}  // namespace specfaith
