#pragma once

#include <cstddef>

namespace pistonlab {

// Truncation policy for the lattice and Bessel double sums.
struct SeriesControl {
  double rel_tol = 1e-12;
  std::size_t max_outer_terms = 100000;
  std::size_t max_inner_terms = 100000;

  void validate() const;
};

// A truncated positive series together with a rigorous bound on what was
// left out.
struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t outer_terms = 0;
  std::size_t total_terms = 0;
};

namespace series {

// Positive kernels x -> K(x) for which exp(x) K(x) is nonincreasing; this
// is what makes the geometric tail bounds below valid.
enum class Kernel {
  k0,           // K0(x)
  k1,           // K1(x)
  k1_prime_abs  // -K1'(x) = K0(x) + K1(x)/x
};

double kernel_value(Kernel kernel, double x);

// Sum over j, k >= 1 of j^j_power * k^k_power * K(2 pi j k ratio).
// j_power must be 0 or -1 and k_power 1 or 2.  Rows (fixed j) are summed
// over k until the certified row tail drops below 1e-3 * rel_tol of the
// running total; rows stop once the bound on all remaining rows drops
// below rel_tol / 2 of it.  Throws BudgetError when a term limit is hit.
SeriesResult double_bessel_sum(Kernel kernel, double ratio, int j_power, int k_power, const SeriesControl& ctrl);

// Sum over n >= 1 of n^power * K(n * step), power in {-1, 0, 1}, with the
// same kind of bound.
SeriesResult single_bessel_sum(Kernel kernel, double step, int power, const SeriesControl& ctrl);

// Bound on sum_{m >= 0} (n + m)^power rho^m for power in {-1, 0, 1, 2},
// n >= 1, 0 <= rho < 1 (exact for nonnegative powers).
double weighted_geometric(int power, double n, double rho);

}  // namespace series
}  // namespace pistonlab
