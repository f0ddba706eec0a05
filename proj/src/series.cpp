#include "pistonlab/series.hpp"

#include <cmath>
#include <string>

#include "pistonlab/errors.hpp"
#include "pistonlab/specfun.hpp"

namespace pistonlab {

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InputError("SeriesControl: rel_tol must lie in (0, 1)");
  if (max_outer_terms == 0 || max_inner_terms == 0) throw InputError("SeriesControl: term budgets must be positive");
}

namespace series {
namespace {

constexpr double kTwoPi = 2.0 * specfun::kPi;

// Compensated running sum (Neumaier).
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

double int_power(double base, int power) {
  switch (power) {
    case -1:
      return 1.0 / base;
    case 0:
      return 1.0;
    case 1:
      return base;
    case 2:
      return base * base;
    default:
      throw InputError("series: unsupported power");
  }
}

}  // namespace

double kernel_value(Kernel kernel, double x) {
  switch (kernel) {
    case Kernel::k0:
      return specfun::bessel_k(0, x);
    case Kernel::k1:
      return specfun::bessel_k(1, x);
    case Kernel::k1_prime_abs:
      return -specfun::bessel_k1_prime(x);
  }
  return 0.0;
}

double weighted_geometric(int power, double n, double rho) {
  const double inv = 1.0 / (1.0 - rho);
  switch (power) {
    case -1:
      return inv / n;
    case 0:
      return inv;
    case 1:
      return n * inv + rho * inv * inv;
    case 2:
      return n * n * inv + 2.0 * n * rho * inv * inv + rho * (1.0 + rho) * inv * inv * inv;
    default:
      throw InputError("weighted_geometric: unsupported power");
  }
}

SeriesResult double_bessel_sum(Kernel kernel, double ratio, int j_power, int k_power, const SeriesControl& ctrl) {
  ctrl.validate();
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw InputError("double_bessel_sum: ratio must be positive");
  if (j_power != 0 && j_power != -1) throw InputError("double_bessel_sum: j_power must be 0 or -1");
  if (k_power != 1 && k_power != 2) throw InputError("double_bessel_sum: k_power must be 1 or 2");

  const double step = kTwoPi * ratio;
  const double outer_rho = std::exp(-step);
  Accumulator total;
  double row_bounds = 0.0;
  SeriesResult result;

  for (std::size_t j = 1;; ++j) {
    if (j > ctrl.max_outer_terms) {
      throw BudgetError("double_bessel_sum: outer term budget exhausted (ratio " + std::to_string(ratio) + ")");
    }
    const double jd = static_cast<double>(j);
    const double j_weight = int_power(jd, j_power);
    const double row_rho = std::exp(-step * jd);

    Accumulator row;
    double row_tail = 0.0;
    double kern = kernel_value(kernel, step * jd);
    for (std::size_t k = 1;; ++k) {
      if (k > ctrl.max_inner_terms) {
        throw BudgetError("double_bessel_sum: inner term budget exhausted (ratio " + std::to_string(ratio) + ")");
      }
      const double kd = static_cast<double>(k);
      row.add(j_weight * int_power(kd, k_power) * kern);
      ++result.total_terms;
      // K(x_{k+1+m}) <= K(x_{k+1}) rho^m with rho = exp(-step j).
      const double next = kernel_value(kernel, step * jd * (kd + 1.0));
      row_tail = j_weight * next * weighted_geometric(k_power, kd + 1.0, row_rho);
      if (row_tail <= 1e-3 * ctrl.rel_tol * std::fabs(total.value() + row.value())) break;
      kern = next;
    }
    total.add(row.value());
    row_bounds += row_tail;
    result.outer_terms = j;

    // Rows j' > j: j'^p <= (j+1)^p, K(step j' k) <= K(step (j+1) k) exp(-step (j'-j-1)).
    const double next = jd + 1.0;
    const double remaining = int_power(next, j_power) / (1.0 - outer_rho) * kernel_value(kernel, step * next) *
                             weighted_geometric(k_power, 1.0, std::exp(-step * next));
    if (remaining <= 0.5 * ctrl.rel_tol * std::fabs(total.value())) {
      result.tail_bound = row_bounds + remaining;
      break;
    }
  }
  result.value = total.value();
  return result;
}

SeriesResult single_bessel_sum(Kernel kernel, double step, int power, const SeriesControl& ctrl) {
  ctrl.validate();
  if (!(step > 0.0) || !std::isfinite(step)) throw InputError("single_bessel_sum: step must be positive");
  const double rho = std::exp(-step);
  Accumulator total;
  SeriesResult result;
  for (std::size_t n = 1;; ++n) {
    if (n > ctrl.max_inner_terms) throw BudgetError("single_bessel_sum: term budget exhausted");
    const double nd = static_cast<double>(n);
    total.add(int_power(nd, power) * kernel_value(kernel, step * nd));
    const double tail = kernel_value(kernel, step * (nd + 1.0)) * weighted_geometric(power, nd + 1.0, rho);
    if (tail <= ctrl.rel_tol * std::fabs(total.value())) {
      result.tail_bound = tail;
      result.outer_terms = n;
      result.total_terms = n;
      break;
    }
  }
  result.value = total.value();
  return result;
}

}  // namespace series
}  // namespace pistonlab
