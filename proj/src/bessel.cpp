#include <cmath>
#include <string>
#include <utility>

#include "bessel_kernels.hpp"
#include "pistonlab/errors.hpp"
#include "pistonlab/specfun.hpp"

namespace pistonlab::specfun {
namespace {

constexpr double kSeriesSwitch = 2.0;

std::pair<double, double> small_argument(double x) { return detail::k01_small_argument(x); }

std::pair<double, double> large_argument_scaled(double x) { return detail::k01_large_argument_scaled(x); }

void check_order_and_argument(int order, double x, const char* who) {
  if (order != 0 && order != 1) throw InputError(std::string(who) + ": only orders 0 and 1 are supported");
  if (!(x > 0.0)) throw InputError(std::string(who) + ": argument must be positive");
  if (std::isinf(x)) throw InputError(std::string(who) + ": infinite argument");
}

}  // namespace

double bessel_k_scaled(int order, double x) {
  check_order_and_argument(order, x, "bessel_k_scaled");
  if (x <= kSeriesSwitch) {
    const auto [k0, k1] = small_argument(x);
    return std::exp(x) * (order == 0 ? k0 : k1);
  }
  const auto [k0, k1] = large_argument_scaled(x);
  return order == 0 ? k0 : k1;
}

BesselValue bessel_k_checked(int order, double x) {
  check_order_and_argument(order, x, "bessel_k");
  if (x <= kSeriesSwitch) {
    const auto [k0, k1] = small_argument(x);
    return {order == 0 ? k0 : k1, false};
  }
  const auto [k0, k1] = large_argument_scaled(x);
  const double scaled = order == 0 ? k0 : k1;
  // log(scaled) - x < log(threshold)
  if (x - std::log(scaled) > -std::log(kUnderflowThreshold)) return {0.0, true};
  return {scaled * std::exp(-x), false};
}

double bessel_k(int order, double x) { return bessel_k_checked(order, x).value; }

double bessel_k1_prime(double x) {
  check_order_and_argument(1, x, "bessel_k1_prime");
  if (x <= kSeriesSwitch) {
    const auto [k0, k1] = small_argument(x);
    return -k0 - k1 / x;
  }
  const auto [k0, k1] = large_argument_scaled(x);
  const double scaled = -k0 - k1 / x;
  if (x - std::log(-scaled) > -std::log(kUnderflowThreshold)) return 0.0;
  return scaled * std::exp(-x);
}

}  // namespace pistonlab::specfun
