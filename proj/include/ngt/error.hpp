#pragma once
#include <stdexcept>
#include <string>

namespace ngt {

// Base for all engine failures that should surface as input/usage errors.
struct NgtError : std::runtime_error {
  explicit NgtError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric evaluation failure (division guard, invalid budget use).
struct EvalError : NgtError {
  explicit EvalError(const std::string& msg) : NgtError(msg) {}
};

// Source text parse failure; offset is a byte offset into the source string.
struct ParseError : NgtError {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& msg)
      : NgtError(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

}  // namespace ngt
