#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gbs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text that does not follow one of the file or key syntaxes.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Ball enumeration grew past the configured element cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gbs
