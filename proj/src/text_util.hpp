#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/error.hpp"

namespace lexlearn::detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Double-quoted form of `text`, escaping `"` and backslash.
inline std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

/// Cursor over a text buffer with line/column tracking, shared by every
/// file-format reader. `#` starts a comment unless a digit follows it
/// (that form is a reentrancy tag).
class TextCursor {
 public:
  explicit TextCursor(std::string_view text, std::size_t first_line = 1)
      : text_(text), line_base_(first_line) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#' && !(pos_ + 1 < text_.size() &&
                               std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  /// Peek without skipping whitespace first.
  char peek_raw(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  bool starts_with(std::string_view s) {
    skip_space();
    return text_.substr(pos_).starts_with(s);
  }

  bool consume(std::string_view s) {
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!consume(s)) fail("expected '" + std::string(s) + "'");
  }

  /// Reads `[A-Za-z_][A-Za-z0-9_-]*`.
  std::string identifier(const char* what = "identifier") {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected number");
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      value = value * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
    return value;
  }

  /// Reads a double-quoted string; `\"` and `\\` are the only escapes.
  std::string quoted() {
    skip_space();
    if (peek_raw() != '"') fail("expected quoted string");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\' && pos_ < text_.size()) c = text_[pos_++];
      if (c == '\n') fail("newline in string");
      out += c;
    }
    return out;
  }

  std::size_t position() const { return pos_; }
  void set_position(std::size_t pos) { pos_ = pos; }
  std::string_view rest() const { return text_.substr(pos_); }
  void advance(std::size_t n) { pos_ += n; }

  std::size_t line() const {
    std::size_t line = line_base_;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
      if (text_[i] == '\n') ++line;
    return line;
  }

  std::size_t column() const {
    std::size_t col = 1;
    for (std::size_t i = pos_; i > 0 && text_[i - 1] != '\n'; --i) ++col;
    return col;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, line(), column());
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_base_;
};

}  // namespace lexlearn::detail
