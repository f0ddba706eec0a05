#pragma once

#include "pistonlab/series.hpp"

// Two-dimensional Epstein zeta function
//
//   Z2(c1, c2; s) = sum over (j, k) != (0, 0) of (j^2 c1^2 + k^2 c2^2)^(-s/2)
//
// through three independent routes: the direct lattice sum, the Bessel
// expansion at s = 3, and analytic continuation by reflection.

namespace pistonlab::epstein {

struct LatticeParams {
  double c1;
  double c2;
  double s;
};

// Direct lattice sum over square shells max(|j|, |k|) = n, plus the integral
// of the summand over the exterior of the square of half-side N + 1/2.  N is
// doubled from 16 until two successive estimates agree to ctrl.rel_tol;
// ctrl.max_outer_terms caps N.  Requires s > 2.
double z2_direct(const LatticeParams& p, const SeriesControl& ctrl);

// Z2(a, b; 3) from its Bessel expansion
//   2 pi^2/(3 a^2 b) + 16 pi/(a b^2) sum_{j,k>=1} (k/j) K1(2 pi j k a/b) + 2 zeta(3)/b^3
// with the arguments ordered so that a >= b.
SeriesResult z2_s3_fast_detailed(double a, double b, const SeriesControl& ctrl);
double z2_s3_fast(double a, double b, const SeriesControl& ctrl = {});

// Given Z2(c1, c2; s), returns Z2(1/c1, 1/c2; 2 - s) via
//   c1 c2 Gamma(s/2) pi^(-s/2) Z2(c; s) = Gamma((2-s)/2) pi^((s-2)/2) Z2(1/c; 2-s).
double reflect_z2(double c1, double c2, double s, double z2_value);

// Z2 for s = -1 (by reflection from s = 3) or s > 2 (s = 3 via the Bessel
// expansion, otherwise the direct sum).  Throws InputError for other s.
double z2_continued(double a, double b, double s, const SeriesControl& ctrl = {});

enum class SAuxRoute { automatic, bessel, direct };

// S(m, a; s) = pi^(-s/2) Gamma(s/2) sum_{n in Z} [(m/pi)^2 + (n/a)^2]^(-s/2).
// The Bessel route is its continuation
//   a m^(1-s) pi^((s-1)/2) [Gamma((s-1)/2) + 4 sum_n K_{(1-s)/2}(2 n m a) / (n m a)^((1-s)/2)],
// available only at s = 3 (order -1); the direct route needs s > 1.
// automatic picks bessel at s = 3 and direct otherwise.
double s_aux(double m, double a, double s, const SeriesControl& ctrl = {}, SAuxRoute route = SAuxRoute::automatic);

}  // namespace pistonlab::epstein
