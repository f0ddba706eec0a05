#pragma once

#include <string_view>

#include "pistonlab/series.hpp"

// Casimir energy of a Dirichlet rectangle and the force on a piston that
// splits an L x b box into a x b and (L - a) x b compartments.  Natural
// units (hbar = c = 1): energies are 1/length, forces 1/length^2.

namespace pistonlab::casimir {

// Aspect ratios outside [kMinAspect, kMaxAspect] are rejected.
inline constexpr double kMinAspect = 1e-4;
inline constexpr double kMaxAspect = 1e4;

struct Geometry {
  double a;  // side along the piston axis / distance to the wall
  double b;  // transverse side

  void validate() const;
  double aspect() const { return a / b; }
};

struct PistonGeometry {
  double L;
  double a;
  double b;

  void validate() const;
};

enum class EnergyRoute { zeta_reflection, bessel_series };
enum class ForceRoute { eq11, eq14, finite_difference, asym_large_a, asym_small_a, finite_l };

std::string_view to_string(EnergyRoute route);
std::string_view to_string(ForceRoute route);

struct EnergyBreakdown {
  double edge_term = 0.0;           // pi/(48 side) pieces
  double bulk_term = 0.0;           // zeta(3) piece (or the Z2 piece on the zeta route)
  double interaction_series = 0.0;  // Bessel double sum, <= 0
  double total = 0.0;
  double tail_bound = 0.0;
  EnergyRoute route = EnergyRoute::bessel_series;
};

struct ForceValue {
  double value = 0.0;
  ForceRoute route = ForceRoute::eq11;
  double tail_bound = 0.0;
  // Set when the route is evaluated outside the regime where it converges
  // quickly (eq11 below a/b = 0.05, eq14 above a/b = 20), or when eq14's
  // cancellation cannot be certified to rel_tol (about a/b > 8).
  bool regime_warning = false;
};

// Regularized vacuum energy of one a x b compartment.
//   zeta_reflection: (pi/8) Z2(1/a, 1/b; -1) - (pi/4) zeta(-1) (1/a + 1/b),
//                    i.e. -(ab/32 pi) Z2(a, b; 3) + (pi/48)(1/a + 1/b).
//   bessel_series:   pi/(48 b) - zeta(3) a/(16 pi b^2) - (1/2b) sum (k/j) K1(2 pi j k a/b)
//                    for a >= b, with a and b exchanged otherwise.
EnergyBreakdown energy_ar(const Geometry& g, EnergyRoute route = EnergyRoute::bessel_series,
                          const SeriesControl& ctrl = {});

// Force on a piston at distance a from one end of an infinitely long box:
//   (pi/b^2) sum_{j,k} k^2 K1'(2 pi j k a/b).
ForceValue force_infinite(const Geometry& g, const SeriesControl& ctrl = {});

// Same force, rearranged so the series converges fast for a <= b:
//   -zeta(3) b/(8 pi a^3) + pi/(48 a^2) - zeta(3)/(16 pi b^2) + (pi b/a^3) sum k^2 K0(2 pi j k b/a).
// For a > b the terms cancel to |F| ~ exp(-2 pi a/b), so the sum is carried
// in extended precision (binary128 where available).
ForceValue force_alt(const Geometry& g, const SeriesControl& ctrl = {});

// force_infinite for a >= b, force_alt otherwise.
ForceValue force_auto(const Geometry& g, const SeriesControl& ctrl = {});

// -d/da E(a, b) of a single compartment, by term-wise differentiation.
ForceValue compartment_force(double a, double b, const SeriesControl& ctrl = {});

// -d/da [E(a, b) + E(L - a, b)] for a finite box.
ForceValue force_finite_L(const PistonGeometry& pg, const SeriesControl& ctrl = {});

inline constexpr double kFdStepFactor = 1e-3;

// Central differences of the energies, step step_factor * min(a, L - a, b),
// with one Richardson level.  The parts linear in the piston position,
// whose contributions cancel exactly, are removed before differencing.  The
// Geometry overload treats the far compartment as infinitely long.
ForceValue force_fd_oracle(const PistonGeometry& pg, const SeriesControl& ctrl = {},
                           double step_factor = kFdStepFactor);
ForceValue force_fd_oracle(const Geometry& g, const SeriesControl& ctrl = {}, double step_factor = kFdStepFactor);

// -(pi/2) (a b^3)^(-1/2) exp(-2 pi a/b), the a >> b limit.
ForceValue force_asym_large_a(const Geometry& g);

// -zeta(3) b/(8 pi a^3) + pi/(48 a^2) - zeta(3)/(16 pi b^2), the a << b limit.
ForceValue force_asym_small_a(const Geometry& g);

// -zeta(3)/(8 pi a^3): force per unit length between two infinite lines.
double parallel_lines_tension(double a);

struct CriticalRatio {
  double root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

// Aspect ratio r in [2, 4] at which energy_ar(1, r) changes sign.  Since
// E(a, b) = e(b/a)/a, this is where the tension at fixed shape changes sign.
CriticalRatio critical_ratio(double tol = 1e-6, const SeriesControl& ctrl = {});

}  // namespace pistonlab::casimir
