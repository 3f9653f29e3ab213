#pragma once

// Character-level cursor shared by the N-Triples, Turtle-subset and rule
// language readers. Internal header.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "odmx/errors.hpp"

namespace odmx::detail {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t first_line = 1) : text_(text) {
    pos_.line = first_line;
  }

  [[nodiscard]] bool at_end() const noexcept { return offset_ >= text_.size(); }
  [[nodiscard]] char peek(std::size_t ahead = 0) const noexcept {
    return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
  }
  [[nodiscard]] Position position() const noexcept { return pos_; }
  [[nodiscard]] std::string_view rest() const noexcept { return text_.substr(offset_); }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && offset_ < text_.size(); ++i) {
      if (text_[offset_] == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else {
        ++pos_.column;
      }
      ++offset_;
    }
  }

  // Skips spaces, tabs, newlines and '#' comments running to end of line.
  void skip_space(bool comments = true) {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (comments && c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool consume(std::string_view token) {
    if (!rest().starts_with(token)) return false;
    advance(token.size());
    return true;
  }

  void expect(std::string_view token, std::string_view what) {
    if (!consume(token)) fail("expected " + std::string(what));
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] static void fail_at(Position p, const std::string& message) {
    throw ParseError(p.line, p.column, message);
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::string out;
    while (!at_end() && pred(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  // <...> with \u / \U escapes. Rejects characters IRIREF forbids.
  std::string read_iriref() {
    const Position start = pos_;
    if (peek() != '<') fail("expected '<' to start an IRI");
    advance();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail_at(start, "unterminated IRI, missing '>'");
      const char c = peek();
      if (c == '>') {
        advance();
        return out;
      }
      if (c == '\\') {
        const Position esc = pos_;
        advance();
        const char kind = peek();
        if (kind != 'u' && kind != 'U') fail_at(esc, "invalid escape in IRI");
        advance();
        append_utf8(out, read_hex(kind == 'u' ? 4 : 8, esc));
        continue;
      }
      const auto uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        fail("malformed IRI: illegal character in IRI");
      }
      out += c;
      advance();
    }
  }

  // "..." with N-Triples escapes; the scanner must be on the opening quote.
  std::string read_quoted() {
    const Position start = pos_;
    advance();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail_at(start, "unterminated string literal");
      const char c = peek();
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        const Position esc = pos_;
        advance();
        const char e = peek();
        advance();
        switch (e) {
          case 't': out += '\t'; break;
          case 'b': out += '\b'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u': append_utf8(out, read_hex(4, esc)); break;
          case 'U': append_utf8(out, read_hex(8, esc)); break;
          default: fail_at(esc, "bad escape sequence in literal");
        }
        continue;
      }
      out += c;
      advance();
    }
  }

 private:
  std::uint32_t read_hex(int digits, Position esc) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      const char h = peek();
      std::uint32_t d = 0;
      if (h >= '0' && h <= '9') {
        d = static_cast<std::uint32_t>(h - '0');
      } else if (h >= 'a' && h <= 'f') {
        d = static_cast<std::uint32_t>(h - 'a' + 10);
      } else if (h >= 'A' && h <= 'F') {
        d = static_cast<std::uint32_t>(h - 'A' + 10);
      } else {
        fail_at(esc, "bad escape sequence: expected hex digit");
      }
      v = v * 16 + d;
      advance();
    }
    if (v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) fail_at(esc, "bad escape sequence: invalid code point");
    return v;
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  Position pos_;
};

inline bool is_pn_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_prefix_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct PrefixedName {
  std::string prefix;
  std::string local;
  Position at;
};

// prefix ":" local, where local may contain dots but never ends with one
// (a trailing '.' terminates the statement). Returns false, consuming
// nothing, when the input does not start with a prefixed name.
inline bool read_pname(Scanner& s, PrefixedName& out) {
  const std::string_view r = s.rest();
  std::size_t i = 0;
  if (i < r.size() && is_prefix_start(r[i])) {
    ++i;
    while (i < r.size() && (is_pn_char(r[i]) && r[i] != '.')) ++i;
  }
  if (i >= r.size() || r[i] != ':') return false;
  const std::size_t colon = i++;
  const std::size_t local_start = i;
  while (i < r.size() && is_pn_char(r[i])) ++i;
  while (i > local_start && r[i - 1] == '.') --i;
  out.prefix = std::string(r.substr(0, colon));
  out.local = std::string(r.substr(local_start, i - local_start));
  out.at = s.position();
  s.advance(i);
  return true;
}

}  // namespace odmx::detail
