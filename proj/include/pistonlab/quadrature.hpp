#pragma once

#include <cstddef>
#include <functional>

namespace pistonlab::quad {

struct ToleranceSpec {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_evals = 200000;

  // Throws InputError unless 2^-50 <= rel_tol < 1 and abs_tol >= 0.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

// Adaptive Gauss-Kronrod (7/15) on a finite interval.  Throws
// QuadratureError carrying the best estimate when tol cannot be met within
// max_evals.
QuadratureResult integrate(const Integrand& f, double lower, double upper, const ToleranceSpec& tol);

// Integral over [lower, inf).  The half-line is mapped onto [0, 1) with
// t = lower + scale * u / (1 - u); choose scale near the length over which f
// varies.
QuadratureResult integrate_semi_infinite(const Integrand& f, double lower, const ToleranceSpec& tol,
                                         double scale = 1.0);

// Iterated integral over [0, inf)^2, f(u, v) with u outer.  The inner axis
// gets a tenth of the relative tolerance so its noise stays below the outer
// error estimate.
QuadratureResult integrate_quadrant(const Integrand2D& f, const ToleranceSpec& tol, double scale = 1.0);

}  // namespace pistonlab::quad
