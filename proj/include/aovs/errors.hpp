#pragma once

#include <stdexcept>
#include <string>

namespace aovs {

// Base class so callers can catch everything from this library at once.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arguments outside an operation's stated domain (non-finite, wrong range,
// mismatched dimensions, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An iteration failed to converge or a computation degenerated numerically.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Malformed input file. row/col are 1-based when known, 0 otherwise.
class FormatError : public Error {
public:
  FormatError(const std::string& msg, std::size_t row = 0, std::size_t col = 0)
      : Error(locate(msg, row, col)), row_(row), col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

private:
  static std::string locate(const std::string& msg, std::size_t row, std::size_t col) {
    if (row == 0) return msg;
    std::string s = msg + " (row " + std::to_string(row);
    if (col != 0) s += ", col " + std::to_string(col);
    return s + ")";
  }

  std::size_t row_;
  std::size_t col_;
};

}  // namespace aovs
