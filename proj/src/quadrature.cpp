#include "pistonlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "pistonlab/errors.hpp"

namespace pistonlab::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// 15-point Kronrod abscissae (non-negative half) and weights; the odd
// entries are the 7-point Gauss abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lower;
  double upper;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NumericalError("quadrature: integrand is not finite at x = " + std::to_string(x));
  return y;
}

// QUADPACK qk15 rule with its error heuristic.
Segment gauss_kronrod(const Integrand& f, double lower, double upper) {
  const double center = 0.5 * (lower + upper);
  const double half = 0.5 * (upper - lower);
  const double f_center = checked(f, center);
  double result_gauss = f_center * kWg[3];
  double result_kronrod = f_center * kWgk[7];
  double result_abs = std::fabs(result_kronrod);
  std::array<double, 7> f1{}, f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f, center - dx);
    f2[j] = checked(f, center + dx);
    const double pair = f1[j] + f2[j];
    result_kronrod += kWgk[j] * pair;
    result_abs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[7] * std::fabs(f_center - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }
  const double scale = std::fabs(half);
  result_abs *= scale;
  result_asc *= scale;
  double error = std::fabs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (result_abs > kTiny / (50.0 * kEps)) error = std::max(50.0 * kEps * result_abs, error);
  return {lower, upper, result_kronrod * half, error};
}

}  // namespace

void ToleranceSpec::validate() const {
  if (!(rel_tol >= std::ldexp(1.0, -50) && rel_tol < 1.0)) {
    throw InputError("quadrature: rel_tol must lie in [2^-50, 1)");
  }
  if (!(abs_tol >= 0.0)) throw InputError("quadrature: abs_tol must be nonnegative");
  if (max_evals < 15) throw InputError("quadrature: max_evals must allow one rule application");
}

QuadratureResult integrate(const Integrand& f, double lower, double upper, const ToleranceSpec& tol) {
  tol.validate();
  if (!std::isfinite(lower) || !std::isfinite(upper)) throw InputError("integrate: limits must be finite");
  if (lower == upper) return {0.0, 0.0, 1};

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, lower, upper);
  double total = first.value;
  double total_error = first.error;
  std::size_t evals = 15;
  heap.push(first);

  while (total_error > std::max(tol.abs_tol, tol.rel_tol * std::fabs(total))) {
    if (evals + 30 > tol.max_evals) {
      throw QuadratureError("quadrature: evaluation budget exhausted before tolerance was met", total, total_error);
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.lower + worst.upper);
    if (!(mid > worst.lower && mid < worst.upper) ||
        std::fabs(worst.upper - worst.lower) < 100.0 * kEps * std::max(std::fabs(mid), kTiny)) {
      throw QuadratureError("quadrature: subinterval too small to bisect (roundoff limit)", total, total_error);
    }
    heap.pop();
    const Segment left = gauss_kronrod(f, worst.lower, mid);
    const Segment right = gauss_kronrod(f, mid, worst.upper);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);

    // Refresh the running sums from scratch now and then so cancellation in
    // the incremental updates cannot accumulate.
    if (heap.size() % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      total_error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, total_error, evals};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double lower, const ToleranceSpec& tol, double scale) {
  if (!std::isfinite(lower)) throw InputError("integrate_semi_infinite: lower limit must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("integrate_semi_infinite: scale must be positive");
  const Integrand mapped = [&](double u) {
    const double w = 1.0 - u;
    const double t = lower + scale * u / w;
    const double y = f(t);
    if (y == 0.0) return 0.0;
    return y * scale / (w * w);
  };
  return integrate(mapped, 0.0, 1.0, tol);
}

QuadratureResult integrate_quadrant(const Integrand2D& f, const ToleranceSpec& tol, double scale) {
  tol.validate();
  ToleranceSpec inner_tol = tol;
  inner_tol.rel_tol = std::max(tol.rel_tol / 10.0, std::ldexp(1.0, -50));
  inner_tol.abs_tol = tol.abs_tol / 10.0;
  std::size_t inner_evals = 0;
  const Integrand outer = [&](double u) {
    const auto inner = integrate_semi_infinite([&](double v) { return f(u, v); }, 0.0, inner_tol, scale);
    inner_evals += inner.evaluations;
    return inner.value;
  };
  auto result = integrate_semi_infinite(outer, 0.0, tol, scale);
  result.evaluations += inner_evals;
  return result;
}

}  // namespace pistonlab::quad
