#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pistonlab/casimir.hpp"
#include "pistonlab/quadrature.hpp"

// Smooth-cutoff regularization of the bare mode sum, the divergent
// coefficients it produces, and numerical checks of the limit identities
// used to relate it to the analytically regularized energy.

namespace pistonlab::cutoff {

enum class CutoffFamily { standard };  // d(t) = [1 + (t + 1)^2 / lambda^2]^-2

struct CutoffSpec {
  double lambda;
  CutoffFamily family = CutoffFamily::standard;

  void validate() const;
  double d(double t) const;
  double d_prime(double t) const;
  double D(double z, double w) const { return d(z) * d(w); }
};

struct CutoffSumOptions {
  // Explicit modes per axis: ceil(mode_factor * lambda * side).
  double mode_factor = 10.0;
  // Refuse sums with more explicit terms than this.
  std::size_t max_modes = 200000000;
};

struct CutoffEnergy {
  double value = 0.0;
  double tail = 0.0;           // everything beyond the explicit block
  double em_correction = 0.0;  // size of the first-derivative Euler-Maclaurin terms
  std::size_t rows = 0;
  std::size_t columns = 0;
};

// (pi/2) sum_{j,k>=1} sqrt((j/a)^2 + (k/b)^2) D(j/a, k/b).  An explicit
// block of rows and columns is summed with compensated addition; the
// remainder in each direction is integrated and corrected with the
// Euler-Maclaurin endpoint terms.
CutoffEnergy energy_cutoff_detailed(const casimir::Geometry& g, const CutoffSpec& cut,
                                    const CutoffSumOptions& opts = {});
double energy_cutoff(const casimir::Geometry& g, const CutoffSpec& cut, const CutoffSumOptions& opts = {});

// (pi/2) int int sqrt(u^2 + v^2) D(u, v) du dv over the quadrant.
double c1_quadrature(const CutoffSpec& cut, const quad::ToleranceSpec& tol = {});

// -pi int_0^inf t D(t, 0) dt, the perimeter coefficient as usually quoted.
// Summing the half-weight zero-index terms of the mode sum gives a quarter
// of this; fit_counterterms reports the measured ratio.
double c2_quadrature(const CutoffSpec& cut, const quad::ToleranceSpec& tol = {});

struct FitResidual {
  casimir::Geometry geometry;
  double energy_ar;
  double residual;
};

struct FitReport {
  double lambda = 0.0;
  double c1_fit = 0.0;
  double c2_fit = 0.0;
  double c1_quad = 0.0;
  double c2_quad = 0.0;
  double condition_number = 0.0;
  std::vector<FitResidual> residuals;

  double c1_ratio() const { return c1_fit / c1_quad; }
  double c2_ratio() const { return c2_fit / c2_quad; }
  // max |residual| / |E_AR| over the geometries.
  double max_relative_residual() const;
};

// Least squares for E_cutoff - E_AR = c1 ab + c2 (a + b).  Needs at least 4
// geometries and a design matrix with condition number below 1e6.
FitReport fit_counterterms(std::span<const casimir::Geometry> geoms, const CutoffSpec& cut,
                           const quad::ToleranceSpec& tol = {}, const CutoffSumOptions& opts = {});

struct IInfinityCheck {
  double reduced;      // -(pi ab/2) int v^2/(e^{2 pi a v} - 1) dv
  double unreduced;    // -2ab int_0^inf du int_u^inf dv sqrt(v^2-u^2)/(e^{2 pi a v} - 1)
  double closed_form;  // -zeta(3) b/(8 pi^2 a^2)
};
IInfinityCheck identity_I_infinity(const casimir::Geometry& g, const quad::ToleranceSpec& tol = {});

struct Sj3Check {
  double quadrature;   // -(2 j^2 b/a^2) int_1^inf sqrt(t^2-1)/(e^{2 pi j b t/a} - 1) dt
  double series;       // -(1/(pi a)) sum_k (j/k) K1(2 pi k j b/a)
  double series_tail;  // bound on the omitted part of the series
};
Sj3Check identity_sj3(int j, const casimir::Geometry& g, const quad::ToleranceSpec& tol = {});

enum class AbelPlanaCase { exp_decay, rational };

struct AbelPlanaSides {
  double left;   // sum_{n>=0} F(n), closed form
  double right;  // F(0)/2 + int_0^inf F + i int_0^inf [F(it) - F(-it)]/(e^{2 pi t} - 1) dt
};

// exp_decay: F(n) = scale e^-n; rational: F(n) = scale/(n+1)^2.
AbelPlanaSides abel_plana_check(AbelPlanaCase which, const quad::ToleranceSpec& tol = {}, double scale = 1.0);

}  // namespace pistonlab::cutoff
