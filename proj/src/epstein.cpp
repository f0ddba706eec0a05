#include "pistonlab/epstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pistonlab/errors.hpp"
#include "pistonlab/quadrature.hpp"
#include "pistonlab/specfun.hpp"

namespace pistonlab::epstein {
namespace {

using specfun::kPi;

double lattice_term(double q, double s) {
  if (s == 3.0) return 1.0 / (q * std::sqrt(q));
  return std::pow(q, -0.5 * s);
}

// Sum of the summand over the shell max(|j|, |k|) = n.
double shell_sum(double c1sq, double c2sq, double s, long n) {
  const double nd = static_cast<double>(n);
  const double edge_j = nd * nd * c1sq;  // j = +-n
  const double edge_k = nd * nd * c2sq;  // k = +-n
  double on_j = lattice_term(edge_j, s);
  double on_k = lattice_term(edge_k, s);
  for (long i = 1; i < n; ++i) {
    const double id = static_cast<double>(i);
    on_j += 2.0 * lattice_term(edge_j + id * id * c2sq, s);
    on_k += 2.0 * lattice_term(edge_k + id * id * c1sq, s);
  }
  const double corner = lattice_term(edge_j + edge_k, s);
  return 2.0 * on_j + 2.0 * on_k + 4.0 * corner;
}

// Integral of the summand over max(|x|, |y|) > R, as R^(2-s)/(s-2) * A with
//   A = 4 [ int_0^{pi/4} g cos^(s-2) + int_{pi/4}^{pi/2} g sin^(s-2) ],
//   g(theta) = (c1^2 cos^2 + c2^2 sin^2)^(-s/2).
double exterior_angular_factor(double c1sq, double c2sq, double s) {
  const auto g = [&](double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    return std::pow(c1sq * c * c + c2sq * sn * sn, -0.5 * s);
  };
  quad::ToleranceSpec tol;
  tol.rel_tol = 1e-13;
  const auto lower = quad::integrate([&](double t) { return g(t) * std::pow(std::cos(t), s - 2.0); }, 0.0,
                                     0.25 * kPi, tol);
  const auto upper = quad::integrate([&](double t) { return g(t) * std::pow(std::sin(t), s - 2.0); },
                                     0.25 * kPi, 0.5 * kPi, tol);
  return 4.0 * (lower.value + upper.value);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError(std::string(what) + " must be positive and finite");
}

}  // namespace

double z2_direct(const LatticeParams& p, const SeriesControl& ctrl) {
  ctrl.validate();
  require_positive(p.c1, "z2_direct: c1");
  require_positive(p.c2, "z2_direct: c2");
  if (!(p.s > 2.0)) throw InputError("z2_direct: the lattice sum converges only for s > 2");

  const double c1sq = p.c1 * p.c1, c2sq = p.c2 * p.c2;
  const double angular = exterior_angular_factor(c1sq, c2sq, p.s);
  const auto tail = [&](long n) {
    const double r = static_cast<double>(n) + 0.5;
    return std::pow(r, 2.0 - p.s) / (p.s - 2.0) * angular;
  };

  double partial = 0.0;
  long radius = 0;
  double previous = 0.0;
  bool have_previous = false;
  for (long target = 16;; target *= 2) {
    if (static_cast<std::size_t>(target) > ctrl.max_outer_terms) {
      throw BudgetError("z2_direct: radius budget exhausted before successive estimates agreed");
    }
    // Shells are added from the outside in for accuracy.
    double shells = 0.0;
    for (long n = target; n > radius; --n) shells += shell_sum(c1sq, c2sq, p.s, n);
    partial += shells;
    radius = target;
    const double estimate = partial + tail(radius);
    if (have_previous && std::fabs(estimate - previous) <= ctrl.rel_tol * std::fabs(estimate)) return estimate;
    previous = estimate;
    have_previous = true;
  }
}

SeriesResult z2_s3_fast_detailed(double a, double b, const SeriesControl& ctrl) {
  require_positive(a, "z2_s3_fast: a");
  require_positive(b, "z2_s3_fast: b");
  const double hi = std::max(a, b), lo = std::min(a, b);
  const double prefactor = 16.0 * kPi / (hi * lo * lo);
  SeriesResult bessel = series::double_bessel_sum(series::Kernel::k1, hi / lo, -1, 1, ctrl);
  const double closed = 2.0 * kPi * kPi / (3.0 * hi * hi * lo) + 2.0 * specfun::riemann_zeta(3.0) / (lo * lo * lo);
  SeriesResult out = bessel;
  out.value = closed + prefactor * bessel.value;
  out.tail_bound = prefactor * bessel.tail_bound;
  return out;
}

double z2_s3_fast(double a, double b, const SeriesControl& ctrl) { return z2_s3_fast_detailed(a, b, ctrl).value; }

double reflect_z2(double c1, double c2, double s, double z2_value) {
  require_positive(c1, "reflect_z2: c1");
  require_positive(c2, "reflect_z2: c2");
  const double left = c1 * c2 * specfun::gamma(0.5 * s) * std::pow(kPi, -0.5 * s) * z2_value;
  return left / (specfun::gamma(0.5 * (2.0 - s)) * std::pow(kPi, 0.5 * (s - 2.0)));
}

double z2_continued(double a, double b, double s, const SeriesControl& ctrl) {
  require_positive(a, "z2_continued: a");
  require_positive(b, "z2_continued: b");
  if (s == -1.0) {
    const double ia = 1.0 / a, ib = 1.0 / b;
    return reflect_z2(ia, ib, 3.0, z2_s3_fast(ia, ib, ctrl));
  }
  if (s == 3.0) return z2_s3_fast(a, b, ctrl);
  if (s > 2.0) return z2_direct({a, b, s}, ctrl);
  throw InputError("z2_continued: supported arguments are s = -1 and s > 2, got s = " + std::to_string(s));
}

namespace {

double s_aux_direct(double m, double a, double s) {
  const double mass = (m / kPi) * (m / kPi);
  const auto f = [&](double t) { return std::pow(mass + (t / a) * (t / a), -0.5 * s); };
  const auto df = [&](double t) { return -s * (t / (a * a)) * std::pow(mass + (t / a) * (t / a), -0.5 * s - 1.0); };

  // Sum to N, then Euler-Maclaurin: sum_{n>N} f = int_N^inf f - f(N)/2 - f'(N)/12 + O(f'''(N)).
  const double scale = a * m / kPi;
  const long n_max = static_cast<long>(std::ceil(std::max(256.0, 64.0 * scale)));
  double sum = 0.0;
  for (long n = n_max; n >= 1; --n) sum += f(static_cast<double>(n));
  const double nd = static_cast<double>(n_max);
  quad::ToleranceSpec tol;
  tol.rel_tol = 1e-13;
  const double integral = quad::integrate_semi_infinite(f, nd, tol, nd).value;
  sum += integral - 0.5 * f(nd) - df(nd) / 12.0;
  const double lattice = f(0.0) + 2.0 * sum;
  return std::pow(kPi, -0.5 * s) * specfun::gamma(0.5 * s) * lattice;
}

double s_aux_bessel(double m, double a, const SeriesControl& ctrl) {
  // s = 3: order (1 - s)/2 = -1, K_{-1} = K_1, Gamma(1) = 1.
  const double ma = m * a;
  const SeriesResult sum = series::single_bessel_sum(series::Kernel::k1, 2.0 * ma, 1, ctrl);
  return a * kPi / (m * m) * (specfun::gamma(1.0) + 4.0 * ma * sum.value);
}

}  // namespace

double s_aux(double m, double a, double s, const SeriesControl& ctrl, SAuxRoute route) {
  require_positive(m, "s_aux: m");
  require_positive(a, "s_aux: a");
  if (route == SAuxRoute::automatic) route = s == 3.0 ? SAuxRoute::bessel : SAuxRoute::direct;
  if (route == SAuxRoute::bessel) {
    if (s != 3.0) {
      throw InputError("s_aux: the Bessel continuation is implemented only at s = 3 (order -1); got s = " +
                       std::to_string(s));
    }
    return s_aux_bessel(m, a, ctrl);
  }
  if (!(s > 1.0)) throw InputError("s_aux: the direct sum needs s > 1 and the Bessel order would be unsupported");
  return s_aux_direct(m, a, s);
}

}  // namespace pistonlab::epstein
