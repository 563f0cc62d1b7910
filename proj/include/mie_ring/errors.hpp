#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mie_ring {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integral that diverges for the requested parameters.
class DivergentIntegralError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Closed form with a vanishing denominator at the requested parameters.
class SingularParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested state lies at or above the continuum threshold (c - E <= 0).
class UnboundStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to reach its accuracy target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input value rejected by a validation rule.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mie_ring
