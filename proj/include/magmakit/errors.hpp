#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magmakit {

/// Malformed text input. Line and column are 1-based; line is 0 when the
/// input was a single string rather than a file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::string const& message() const noexcept { return message_; }

  ParseError at_line(std::size_t line) const {
    return ParseError(message_, line, column_);
  }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A configured size or search cap was hit before an answer was reached.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer result does not fit the configured width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace magmakit
