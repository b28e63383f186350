#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rhlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical or policy domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole (s = 1 for zeta, non-positive integers for Gamma).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested working precision cannot absorb the cancellation of the sum.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, int minimum_digits)
      : Error(what + " (minimum " + std::to_string(minimum_digits) + " digits)"),
        minimum_digits_(minimum_digits) {}

  int minimum_digits() const noexcept { return minimum_digits_; }

 private:
  int minimum_digits_;
};

/// Evaluation is too ill-conditioned to meet the requested accuracy.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// A NaN or infinity tried to escape an arithmetic operation.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Sieve or table size exceeds what the implementation will allocate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Corrupt or truncated cache file; carries the byte offset of the problem.
class CacheError : public Error {
 public:
  CacheError(const std::string& what, std::size_t offset)
      : Error("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace rhlab
