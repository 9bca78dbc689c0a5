#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ibu {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the formula and scenario parsers; carries a byte offset into the
// source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Command-line / argument arity problems. The CLI maps these to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ibu
