#include <cmath>
#include <random>

#include "doctest.h"
#include "pistonlab/errors.hpp"
#include "pistonlab/quadrature.hpp"
#include "pistonlab/specfun.hpp"
#include "support.hpp"

using namespace pistonlab;
using specfun::kPi;
using testing::rel_diff;

TEST_CASE("gamma at known points") {
  CHECK(rel_diff(specfun::gamma(1.0), 1.0) < 1e-14);
  CHECK(rel_diff(specfun::gamma(0.5), std::sqrt(kPi)) < 1e-14);
  CHECK(rel_diff(specfun::gamma(-0.5), -2.0 * std::sqrt(kPi)) < 1e-14);
  CHECK(rel_diff(specfun::gamma(5.0), 24.0) < 1e-14);
  CHECK(rel_diff(specfun::gamma(10.0), 362880.0) < 1e-13);
  CHECK(rel_diff(specfun::gamma(-1.5), 4.0 * std::sqrt(kPi) / 3.0) < 1e-14);
  CHECK(rel_diff(specfun::gamma(1e-8), 1e8 - 0.5772156649015329) < 1e-14);
}

TEST_CASE("gamma recurrence on random arguments") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng);
    const double g1 = specfun::gamma(x + 1.0);
    CHECK(std::abs(g1 - x * specfun::gamma(x)) <= 1e-12 * std::abs(g1));
  }
}

TEST_CASE("gamma rejects poles and overflow") {
  CHECK_THROWS_AS(specfun::gamma(0.0), InputError);
  CHECK_THROWS_AS(specfun::gamma(-3.0), InputError);
  CHECK_THROWS_AS(specfun::gamma(171.5), InputError);
  CHECK_THROWS_AS(specfun::gamma(NAN), InputError);
}

TEST_CASE("zeta at even integers and negative integers") {
  CHECK(rel_diff(specfun::riemann_zeta(2.0), kPi * kPi / 6.0) < 1e-14);
  CHECK(rel_diff(specfun::riemann_zeta(4.0), std::pow(kPi, 4) / 90.0) < 1e-14);
  CHECK(std::abs(specfun::riemann_zeta(-1.0) + 1.0 / 12.0) <= 1e-12 / 12.0);
  CHECK(rel_diff(specfun::riemann_zeta(-3.0), 1.0 / 120.0) < 1e-12);
  CHECK(specfun::riemann_zeta(0.0) == -0.5);
  CHECK(specfun::riemann_zeta(-2.0) == 0.0);
  CHECK_THROWS_AS(specfun::riemann_zeta(1.0), InputError);
}

TEST_CASE("zeta(3) inside the partial-sum bracket") {
  // S_N + 1/(2(N+1)^2) < zeta(3) < S_N + 1/(2N^2)
  const int n = 1000000;
  double partial = 0.0;
  for (int k = n; k >= 1; --k) partial += 1.0 / (double(k) * k * k);
  const double z3 = specfun::riemann_zeta(3.0);
  CHECK(z3 >= partial + 0.5 / (double(n + 1) * (n + 1)) - 1e-15);
  CHECK(z3 <= partial + 0.5 / (double(n) * n) + 1e-15);
  CHECK(rel_diff(z3, 1.2020569031595942) < 1e-15);
}

TEST_CASE("zeta near the pole and on the critical strip") {
  // zeta(1 + e) = 1/e + gamma + O(e)
  const double e = 1e-6;
  CHECK(std::abs(specfun::riemann_zeta(1.0 + e) - (1.0 / e + specfun::kEulerGamma)) < 1e-4);
  CHECK(rel_diff(specfun::riemann_zeta(0.5), -1.4603545088095868) < 1e-13);
}

TEST_CASE("zeta reflection") {
  SUBCASE("odd integers reflect onto trivial zeros") {
    for (double s : {3.0, 5.0, 7.0}) CHECK(specfun::riemann_zeta(1.0 - s) == 0.0);
  }
  SUBCASE("round trip off the integers") {
    for (double s : {2.5, 3.25, 5.25, 7.25}) {
      const double z = specfun::riemann_zeta(s);
      const double reflected = specfun::zeta_from_reflection(1.0 - s, z);
      CHECK(rel_diff(reflected, specfun::riemann_zeta(1.0 - s)) < 1e-12);
      CHECK(rel_diff(specfun::zeta_from_reflection(s, reflected), z) < 1e-12);
    }
  }
  SUBCASE("zeta(-1) from zeta(2)") {
    CHECK(rel_diff(specfun::zeta_from_reflection(-1.0, kPi * kPi / 6.0), -1.0 / 12.0) < 1e-12);
  }
}

namespace {

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, cut where the integrand is below 1e-300.
double bessel_oracle(int order, double x) {
  const double upper = std::acosh(700.0 / x);
  const auto r = quad::integrate([&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(order * t); }, 0.0,
                                 upper, quad::ToleranceSpec{1e-13, 0.0, 400000});
  return r.value;
}

}  // namespace

TEST_CASE("K0 and K1 against the integral representation") {
  for (double x : {0.05, 0.3, 1.0, 1.9, 2.0, 2.1, 3.5, 7.0, 15.0, 40.0}) {
    CAPTURE(x);
    CHECK(rel_diff(specfun::bessel_k(0, x), bessel_oracle(0, x)) < 1e-12);
    CHECK(rel_diff(specfun::bessel_k(1, x), bessel_oracle(1, x)) < 1e-12);
  }
  CHECK(rel_diff(specfun::bessel_k(0, 1.0), 0.42102443824070834) < 1e-15);
  CHECK(rel_diff(specfun::bessel_k(1, 1.0), 0.60190723019723458) < 1e-15);
}

TEST_CASE("K1 limits") {
  const double tiny = 1e-6;
  CHECK(std::abs(tiny * specfun::bessel_k(1, tiny) - 1.0) < 1e-10);
  const double x = 20.0;
  const double leading = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
  CHECK(std::abs(specfun::bessel_k(1, x) / leading - 1.0) < 0.02);
  CHECK(rel_diff(specfun::bessel_k(1, x), leading * (1.0 + 3.0 / (8.0 * x) - 15.0 / (128.0 * x * x))) < 1e-4);
}

TEST_CASE("Bessel derivatives") {
  for (double x : {0.5, 2.0, 8.0}) {
    CAPTURE(x);
    const double d0 = testing::derivative([](double t) { return specfun::bessel_k(0, t); }, x, 1e-4 * x);
    CHECK(std::abs(d0 + specfun::bessel_k(1, x)) <= 1e-7 * specfun::bessel_k(1, x));
  }
  for (double x : {0.3, 1.0, 2.0, 5.0, 12.0}) {
    CAPTURE(x);
    const double d1 = testing::derivative([](double t) { return specfun::bessel_k(1, t); }, x, 1e-4 * x);
    CHECK(rel_diff(specfun::bessel_k1_prime(x), d1) < 1e-8);
  }
  const double x = 30.0;
  CHECK(std::abs(specfun::bessel_k1_prime(x) / (-std::sqrt(kPi / (2.0 * x)) * std::exp(-x)) - 1.0) < 0.03);
}

TEST_CASE("Bessel ordering and monotonicity") {
  double prev0 = INFINITY, prev1 = INFINITY;
  for (double x : testing::log_grid(0.01, 50.0, 60)) {
    const double k0 = specfun::bessel_k(0, x), k1 = specfun::bessel_k(1, x);
    CHECK(k1 > k0);
    CHECK(k0 < prev0);
    CHECK(k1 < prev1);
    CHECK(specfun::bessel_k1_prime(x) < 0.0);
    prev0 = k0;
    prev1 = k1;
  }
}

TEST_CASE("Bessel underflow policy") {
  const auto v = specfun::bessel_k_checked(0, 800.0);
  CHECK(v.value == 0.0);
  CHECK(v.underflow);
  CHECK_FALSE(specfun::bessel_k_checked(1, 600.0).underflow);
  CHECK(specfun::bessel_k(1, 600.0) > 0.0);
  CHECK(rel_diff(specfun::bessel_k_scaled(0, 800.0), std::sqrt(kPi / 1600.0) * (1.0 - 1.0 / 6400.0 + 9.0 / (128.0 * 640000.0))) < 1e-9);
  CHECK(specfun::bessel_k1_prime(800.0) == 0.0);
}

TEST_CASE("Bessel rejects bad input") {
  CHECK_THROWS_AS(specfun::bessel_k(2, 1.0), InputError);
  CHECK_THROWS_AS(specfun::bessel_k(0, 0.0), InputError);
  CHECK_THROWS_AS(specfun::bessel_k(1, -1.0), InputError);
  CHECK_THROWS_AS(specfun::bessel_k(0, NAN), InputError);
  CHECK_THROWS_AS(specfun::bessel_k(0, INFINITY), InputError);
  CHECK_THROWS_AS(specfun::bessel_k1_prime(0.0), InputError);
}
