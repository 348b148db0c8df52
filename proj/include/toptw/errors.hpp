#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toptw {

/// Malformed instance or solution text. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Invalid solver or harness parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on a value that violates its precondition
/// (e.g. scoring an infeasible tour, overlapping CROSS segments).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Instance too large for the exact enumerator.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace toptw
