#include <array>
#include <cmath>

#include "pistonlab/errors.hpp"
#include "pistonlab/specfun.hpp"

namespace pistonlab::specfun {
namespace {

// B_2, B_4, ..., B_24 divided by (2k)!.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23};

constexpr int kDirectTerms = 10;

// Partial sum to N-1, integral tail N^(1-s)/(s-1), and Euler-Maclaurin
// corrections.  Valid for any real s != 1; used here for s > 0.
double zeta_euler_maclaurin(double s) {
  const double n = kDirectTerms;
  double sum = 0.0;
  for (int k = kDirectTerms - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double n_pow = std::pow(n, -s);
  sum += n * n_pow / (s - 1.0) + 0.5 * n_pow;

  // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
  double rising = s;
  double power = n_pow / n;
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    const double term = kBernoulliOverFactorial[k] * rising * power;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    const double m = 2.0 * static_cast<double>(k + 1);
    rising *= (s + m - 1.0) * (s + m);
    power /= n * n;
  }
  return sum;
}

}  // namespace

double zeta_from_reflection(double s, double zeta_one_minus_s) {
  const double half = 0.5 * s;
  if (half <= 0.0 && half == std::floor(half)) return 0.0;
  return gamma(0.5 * (1.0 - s)) / gamma(half) * std::pow(kPi, s - 0.5) * zeta_one_minus_s;
}

double riemann_zeta(double s) {
  if (std::isnan(s)) throw InputError("riemann_zeta: NaN argument");
  if (s == 1.0) throw InputError("riemann_zeta: pole at s = 1");
  if (s == 0.0) return -0.5;
  if (s > 0.0) return zeta_euler_maclaurin(s);
  return zeta_from_reflection(s, zeta_euler_maclaurin(1.0 - s));
}

}  // namespace pistonlab::specfun
