#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace absolve {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A construction received NaN/Inf or an otherwise malformed value.
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Division by an exactly zero denominator.
class DivisionGuardError : public Error {
 public:
  using Error::Error;
};

/// A strategy supplied parameters that violate condition (5) or (9) of the
/// iteration (the denominator z'H A'v or w'H A'v vanishes).
class StrategyViolation : public Error {
 public:
  using Error::Error;
};

/// A subclass precondition (SPD, full column rank, ...) was found violated
/// during the run.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Scaling/weight history is not admissible (singular W'H1 A'V).
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// Operation called on an object in the wrong state (e.g. a non-solved report).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Linearly dependent rows or columns where full rank is required.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Invalid free parameter (e.g. s'd = 0 in the secant update).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Structural constraints plus the secant equation have no solution.
class InfeasibleStructureError : public Error {
 public:
  using Error::Error;
};

/// Backtracking line search exhausted its budget.
class LineSearchError : public Error {
 public:
  using Error::Error;
};

/// Generic numerical failure (blocked step, tiny pivot, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace absolve
