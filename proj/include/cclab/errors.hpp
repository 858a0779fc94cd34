#pragma once

#include <stdexcept>
#include <string>

namespace cclab {

// File-system level failure (missing file, unreadable path, write failure).
// The CLI maps this to exit code 2; all other validation/parse/shape errors
// (std::invalid_argument, std::out_of_range, std::length_error, ParseError)
// map to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input content (CSV cell that fails to parse, bad config key, ...).
// Carries the 1-based line number when it refers to a file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace cclab
