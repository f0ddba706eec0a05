#include "pistonlab/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pistonlab/epstein.hpp"
#include "pistonlab/errors.hpp"
#include "pistonlab/specfun.hpp"
#include "bessel_kernels.hpp"

namespace pistonlab::casimir {
namespace {

using specfun::kPi;
using series::Kernel;

constexpr double kEq11WarnBelow = 0.05;
constexpr double kEq14WarnAbove = 20.0;

double zeta3() {
  static const double value = specfun::riemann_zeta(3.0);
  return value;
}

void check_length(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError(std::string(what) + " must be a positive finite length");
}

// Energy series converged down to rounding, so finite differences of it
// are smooth.
SeriesControl fine_control(const SeriesControl& ctrl) {
  SeriesControl fine = ctrl;
  fine.rel_tol = std::min(ctrl.rel_tol, 1e-17);
  return fine;
}

// -zeta(3) b/(8 pi a^3) + pi/(48 a^2) [- zeta(3)/(16 pi b^2)] + (pi b/a^3) sum k^2 K0(2 pi j k b/a),
// accumulated in extended precision.  For a > b the closed-form terms and the
// sum cancel to |F| << their size, which double precision cannot resolve.
ForceValue small_a_form(double a, double b, bool far_bulk, const SeriesControl& ctrl) {
  using specfun::detail::Constants;
  using W = specfun::detail::wide;
  ctrl.validate();
  const W pi = Constants<W>::pi();
  static const W z3 = specfun::detail::wide_parse("1.20205690315959428539973816151144999076498629234049888");
  const W wa = a, wb = b;
  W closed = -z3 * wb / (W(8) * pi * wa * wa * wa) + pi / (W(48) * wa * wa);
  if (far_bulk) closed -= z3 / (W(16) * pi * wb * wb);
  const W prefactor = pi * wb / (wa * wa * wa);
  const W step = W(2) * pi * wb / wa;
  const W eps = Constants<W>::epsilon();
  const double step_d = 2.0 * kPi * b / a;
  const double outer_rho = std::exp(-step_d);

  W total = 0;
  double row_bounds = 0.0;
  bool resolved = false;
  const auto kernel = [](W x) { return specfun::detail::k0_value(x); };
  // The partial force overstates |F| by orders of magnitude until the
  // cancellation is complete, so rows are summed to full working precision
  // and the outer stop compares against |partial| - remaining.
  for (std::size_t j = 1;; ++j) {
    if (j > ctrl.max_outer_terms) throw BudgetError("force_alt: outer term budget exhausted");
    const double jd = static_cast<double>(j);
    const double row_rho = std::exp(-step_d * jd);
    W row = 0;
    double row_tail = 0.0;
    W kern = kernel(step * W(jd));
    for (std::size_t k = 1;; ++k) {
      if (k > ctrl.max_inner_terms) throw BudgetError("force_alt: inner term budget exhausted");
      const W kd = static_cast<double>(k);
      row += kd * kd * kern;
      const W next = kernel(step * W(jd) * (kd + W(1)));
      row_tail = static_cast<double>(next) * series::weighted_geometric(2, static_cast<double>(k) + 1.0, row_rho);
      if (W(row_tail) <= eps * (total + row)) break;
      kern = next;
    }
    total += row;
    row_bounds += row_tail;
    const double next = jd + 1.0;
    const double remaining = static_cast<double>(kernel(step * W(next))) / (1.0 - outer_rho) *
                             series::weighted_geometric(2, 1.0, std::exp(-step_d * next));
    const W omitted = prefactor * W(row_bounds + remaining);
    const W lower = specfun::detail::wide_abs(closed + prefactor * total) - omitted;
    resolved = lower > W(0) && omitted <= W(0.5 * ctrl.rel_tol) * lower;
    if (resolved || W(remaining) <= eps * total) {
      row_bounds += remaining;
      break;
    }
  }
  ForceValue out;
  out.value = static_cast<double>(closed + prefactor * total);
  out.tail_bound = static_cast<double>(prefactor) * row_bounds;
  out.route = ForceRoute::eq14;
  out.regime_warning = !resolved;
  return out;
}

// Pieces of -dE/da for one compartment: a constant that cancels between the
// two sides of a piston, and the a-dependent rest.
struct CompartmentParts {
  double constant = 0.0;
  double variable = 0.0;
  double tail_bound = 0.0;
};

CompartmentParts compartment_parts(double a, double b, const SeriesControl& ctrl) {
  CompartmentParts out;
  if (a >= b) {
    const SeriesResult sum = series::double_bessel_sum(Kernel::k1_prime_abs, a / b, 0, 2, ctrl);
    const double prefactor = kPi / (b * b);
    out.constant = zeta3() / (16.0 * kPi * b * b);
    out.variable = -prefactor * sum.value;
    out.tail_bound = prefactor * sum.tail_bound;
  } else {
    const ForceValue f = small_a_form(a, b, false, ctrl);
    out.variable = f.value;
    out.tail_bound = f.tail_bound;
  }
  return out;
}

// E(x, b) minus its part linear in x (-zeta(3) x/(16 pi b^2) + pi/(48 b)),
// taken from the series pieces directly when x >= b so no cancellation occurs.
double energy_less_linear(double x, double b, const SeriesControl& ctrl) {
  const EnergyBreakdown e = energy_ar({x, b}, EnergyRoute::bessel_series, ctrl);
  if (x >= b) return e.interaction_series;
  return e.total - (kPi / (48.0 * b) - zeta3() * x / (16.0 * kPi * b * b));
}

}  // namespace

void Geometry::validate() const {
  check_length(a, "Geometry: a");
  check_length(b, "Geometry: b");
  const double r = a / b;
  if (!(r >= kMinAspect && r <= kMaxAspect)) {
    throw InputError("Geometry: aspect ratio a/b = " + std::to_string(r) + " outside [1e-4, 1e4]");
  }
}

void PistonGeometry::validate() const {
  check_length(L, "PistonGeometry: L");
  check_length(b, "PistonGeometry: b");
  if (!(a > 0.0 && a < L)) throw InputError("PistonGeometry: piston position must satisfy 0 < a < L");
  Geometry{a, b}.validate();
  Geometry{L - a, b}.validate();
}

std::string_view to_string(EnergyRoute route) {
  switch (route) {
    case EnergyRoute::zeta_reflection:
      return "zeta_reflection";
    case EnergyRoute::bessel_series:
      return "bessel_series";
  }
  return "unknown";
}

std::string_view to_string(ForceRoute route) {
  switch (route) {
    case ForceRoute::eq11:
      return "eq11";
    case ForceRoute::eq14:
      return "eq14";
    case ForceRoute::finite_difference:
      return "finite_difference";
    case ForceRoute::asym_large_a:
      return "asym_large_a";
    case ForceRoute::asym_small_a:
      return "asym_small_a";
    case ForceRoute::finite_l:
      return "finite_l";
  }
  return "unknown";
}

EnergyBreakdown energy_ar(const Geometry& g, EnergyRoute route, const SeriesControl& ctrl) {
  g.validate();
  EnergyBreakdown out;
  out.route = route;
  if (route == EnergyRoute::zeta_reflection) {
    // Analytic continuation of (pi/2) sum_{j,k>=1} [(j/a)^2 + (k/b)^2]^(-s/2) to s = -1.
    const double z2 = epstein::z2_continued(1.0 / g.a, 1.0 / g.b, -1.0, ctrl);
    out.bulk_term = kPi / 8.0 * z2;
    out.edge_term = -kPi / 4.0 * specfun::riemann_zeta(-1.0) * (1.0 / g.a + 1.0 / g.b);
    out.interaction_series = 0.0;
    out.total = out.bulk_term + out.edge_term;
    // Z2(1/a,1/b;-1) = -ab Z2(a,b;3)/(4 pi^2); propagate the Z2 truncation bound.
    const auto detail = epstein::z2_s3_fast_detailed(g.a, g.b, ctrl);
    out.tail_bound = g.a * g.b / (32.0 * kPi) * detail.tail_bound;
    return out;
  }
  const double hi = std::max(g.a, g.b), lo = std::min(g.a, g.b);
  const SeriesResult sum = series::double_bessel_sum(Kernel::k1, hi / lo, -1, 1, ctrl);
  out.edge_term = kPi / (48.0 * lo);
  out.bulk_term = -zeta3() * hi / (16.0 * kPi * lo * lo);
  out.interaction_series = -sum.value / (2.0 * lo);
  out.total = out.edge_term + out.bulk_term + out.interaction_series;
  out.tail_bound = sum.tail_bound / (2.0 * lo);
  return out;
}

ForceValue force_infinite(const Geometry& g, const SeriesControl& ctrl) {
  g.validate();
  const SeriesResult sum = series::double_bessel_sum(Kernel::k1_prime_abs, g.aspect(), 0, 2, ctrl);
  const double prefactor = kPi / (g.b * g.b);
  return {-prefactor * sum.value, ForceRoute::eq11, prefactor * sum.tail_bound, g.aspect() < kEq11WarnBelow};
}

ForceValue force_alt(const Geometry& g, const SeriesControl& ctrl) {
  g.validate();
  ForceValue out = small_a_form(g.a, g.b, true, ctrl);
  out.regime_warning = out.regime_warning || g.aspect() > kEq14WarnAbove;
  return out;
}

ForceValue force_auto(const Geometry& g, const SeriesControl& ctrl) {
  return g.a >= g.b ? force_infinite(g, ctrl) : force_alt(g, ctrl);
}

ForceValue compartment_force(double a, double b, const SeriesControl& ctrl) {
  Geometry{a, b}.validate();
  const CompartmentParts parts = compartment_parts(a, b, ctrl);
  return {parts.constant + parts.variable, ForceRoute::finite_l, parts.tail_bound, false};
}

ForceValue force_finite_L(const PistonGeometry& pg, const SeriesControl& ctrl) {
  pg.validate();
  const double far = pg.L - pg.a;
  ForceValue out;
  out.route = ForceRoute::finite_l;
  if (far == pg.a) return out;
  const CompartmentParts near_side = compartment_parts(pg.a, pg.b, ctrl);
  const CompartmentParts far_side = compartment_parts(far, pg.b, ctrl);
  out.value = (near_side.constant - far_side.constant) + (near_side.variable - far_side.variable);
  out.tail_bound = near_side.tail_bound + far_side.tail_bound;
  return out;
}

namespace {

template <typename EnergyFn>
ForceValue richardson_force(EnergyFn&& energy, double x, double h) {
  const auto central = [&](double step) { return (energy(x + step) - energy(x - step)) / (2.0 * step); };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  const double extrapolated = (4.0 * fine - coarse) / 3.0;
  return {-extrapolated, ForceRoute::finite_difference, std::fabs(fine - coarse) / 3.0, false};
}

}  // namespace

// The parts of the two energies linear in the piston position cancel
// exactly in the force, so they are dropped before differencing.
ForceValue force_fd_oracle(const PistonGeometry& pg, const SeriesControl& ctrl, double step_factor) {
  pg.validate();
  if (!(step_factor > 0.0 && step_factor < 0.1)) throw InputError("force_fd_oracle: step_factor must lie in (0, 0.1)");
  const SeriesControl fine = fine_control(ctrl);
  const double h = step_factor * std::min({pg.a, pg.L - pg.a, pg.b});
  const auto energy = [&](double x) {
    return energy_less_linear(x, pg.b, fine) + energy_less_linear(pg.L - x, pg.b, fine);
  };
  return richardson_force(energy, pg.a, h);
}

ForceValue force_fd_oracle(const Geometry& g, const SeriesControl& ctrl, double step_factor) {
  g.validate();
  if (!(step_factor > 0.0 && step_factor < 0.1)) throw InputError("force_fd_oracle: step_factor must lie in (0, 0.1)");
  const SeriesControl fine = fine_control(ctrl);
  const double h = step_factor * std::min(g.a, g.b);
  return richardson_force([&](double x) { return energy_less_linear(x, g.b, fine); }, g.a, h);
}

ForceValue force_asym_large_a(const Geometry& g) {
  g.validate();
  const double value = -0.5 * kPi / std::sqrt(g.a * g.b * g.b * g.b) * std::exp(-2.0 * kPi * g.a / g.b);
  return {value, ForceRoute::asym_large_a, 0.0, false};
}

ForceValue force_asym_small_a(const Geometry& g) {
  g.validate();
  const double a = g.a, b = g.b;
  const double value =
      -zeta3() * b / (8.0 * kPi * a * a * a) + kPi / (48.0 * a * a) - zeta3() / (16.0 * kPi * b * b);
  return {value, ForceRoute::asym_small_a, 0.0, false};
}

double parallel_lines_tension(double a) {
  check_length(a, "parallel_lines_tension: a");
  return -zeta3() / (8.0 * kPi * a * a * a);
}

CriticalRatio critical_ratio(double tol, const SeriesControl& ctrl) {
  if (!(tol >= 1e-10 && tol <= 1e-2)) throw InputError("critical_ratio: tol must lie in [1e-10, 1e-2]");
  const auto energy = [&](double r) { return energy_ar({1.0, r}, EnergyRoute::bessel_series, ctrl).total; };

  CriticalRatio out;
  double lo = 2.0, hi = 4.0;
  double f_lo = energy(lo), f_hi = energy(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) throw NumericalError("critical_ratio: energy does not change sign on [2, 4]");

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = energy(mid);
    ++out.iterations;
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }

  // Secant from the bracket ends, falling back to bisection if an iterate
  // leaves the bracket.
  double x0 = lo, f0 = f_lo, x1 = hi, f1 = f_hi;
  double root = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > lo && x2 < hi)) x2 = 0.5 * (lo + hi);
    const double f2 = energy(x2);
    ++out.iterations;
    if (f2 > 0.0) {
      lo = x2;
    } else {
      hi = x2;
    }
    const double step = std::fabs(x2 - x1);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    root = x2;
    if (step < tol || f2 == 0.0 || hi - lo < tol) break;
  }
  out.root = root;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  return out;
}

}  // namespace pistonlab::casimir
