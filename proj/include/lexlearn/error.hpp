#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexlearn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (hierarchy, AVM, lexicon, clause or store files).
/// `line` is 1-based; 0 means the location is unknown.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string where = "line " + std::to_string(line);
    if (column != 0) where += ", column " + std::to_string(column);
    return where + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A path could not be followed or extended in a feature structure.
class PathError : public Error {
 public:
  using Error::Error;
};

/// The grammar has no rule for something the parser produced.
class GrammarGap : public Error {
 public:
  using Error::Error;
};

}  // namespace lexlearn
