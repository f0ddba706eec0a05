#include <array>
#include <cmath>

#include "pistonlab/errors.hpp"
#include "pistonlab/specfun.hpp"

namespace pistonlab::specfun {
namespace {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi x) with the argument reduced first, so it is exact at integers.
double sin_pi(double x) {
  const double n = std::round(2.0 * x);
  const double r = x - 0.5 * n;  // |r| <= 1/4
  const long quadrant = static_cast<long>(std::fmod(n, 4.0) + 4.0) % 4;
  switch (quadrant) {
    case 0:
      return std::sin(kPi * r);
    case 1:
      return std::cos(kPi * r);
    case 2:
      return -std::sin(kPi * r);
    default:
      return -std::cos(kPi * r);
  }
}

// Gamma(x) for x >= 0.5.
double lanczos_gamma(double x) {
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) split in two halves so it does not overflow before exp(-t).
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half_power * std::exp(-t) * half_power * series;
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw InputError("gamma: NaN argument");
  if (is_nonpositive_integer(x)) throw InputError("gamma: pole at nonpositive integer argument");
  if (std::fabs(x) > 170.0) throw InputError("gamma: |x| > 170 overflows double precision");
  if (x >= 0.5) return lanczos_gamma(x);
  return kPi / (sin_pi(x) * lanczos_gamma(1.0 - x));
}

}  // namespace pistonlab::specfun
