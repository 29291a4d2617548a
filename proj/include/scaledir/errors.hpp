#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scaledir {

// Parse failures carry the byte offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        message_(what),
        position_(position) {}

  const std::string& message() const { return message_; }
  std::size_t position() const { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

// Violated mathematical precondition: singular matrix, division by zero,
// context mismatch, unsupported subgroup representation, and the like.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// The k-range {k >= 1 : S_b * k <= S_a * n} in a delta_n evaluation is empty.
// Kept separate from the generic precondition failure so callers can tell
// "bad input" apart from "this n is too small for these scales".
class EmptyKRangeError : public PreconditionError {
 public:
  explicit EmptyKRangeError(const std::string& what) : PreconditionError(what) {}
};

}  // namespace scaledir
