#pragma once

#include <stdexcept>
#include <string>

namespace pistonlab {

// Bad arguments: poles, out-of-range geometry, unsupported orders.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not meet its tolerance or budget.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature gave up; carries the best estimate it had.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : NumericalError(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// A truncated series exhausted its term budget before its tail bound was met.
class BudgetError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pistonlab
