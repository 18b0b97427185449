#pragma once

#include <stdexcept>
#include <string>

namespace fracdyn {

// Argument and configuration problems are reported with the standard
// std::invalid_argument / std::domain_error / std::length_error types.
// Failures that arise while a computation runs derive from NumericalError.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive refinement exhausted its interval budget.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Implicit update denominator vanished or the stability guard rejected a step.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A fuzzy driver state left the interval on which its memberships are valid.
class ValidityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Least-squares fit has no unique solution (e.g. all abscissae equal).
class DegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Linear solve hit a zero pivot.
class PivotError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fracdyn
