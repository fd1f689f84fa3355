#pragma once

#include <stdexcept>
#include <string>

namespace cesaro {

/// Index outside the domain of a sequence (index 0, or past the end of a
/// finite table).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid parameter: base not above 1, s outside [0,1], bad window, ...
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A block boundary or index no longer fits a signed 64-bit integer.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed sequence file. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A data-dependent precondition failed (e.g. a negative term fed to the
/// nonnegative single-base check).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cesaro
