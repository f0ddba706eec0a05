#include <cmath>
#include <utility>

#include "doctest.h"
#include "pistonlab/epstein.hpp"
#include "pistonlab/errors.hpp"
#include "pistonlab/series.hpp"
#include "pistonlab/specfun.hpp"
#include "support.hpp"

using namespace pistonlab;
using specfun::kPi;
using testing::rel_diff;

namespace {

SeriesControl loose(double rel_tol) {
  SeriesControl c;
  c.rel_tol = rel_tol;
  return c;
}

double brute_double_sum(series::Kernel kernel, double ratio, int j_power, int k_power, int n) {
  double total = 0.0;
  for (int j = n; j >= 1; --j) {
    for (int k = n; k >= 1; --k) {
      total += std::pow(double(j), j_power) * std::pow(double(k), k_power) *
               series::kernel_value(kernel, 2.0 * kPi * ratio * j * k);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("weighted geometric sums") {
  const double rho = 0.3;
  for (int p : {-1, 0, 1, 2}) {
    for (double n : {1.0, 4.0}) {
      double direct = 0.0;
      for (int m = 0; m < 200; ++m) direct += std::pow(n + m, p) * std::pow(rho, m);
      CAPTURE(p);
      CHECK(series::weighted_geometric(p, n, rho) >= direct * (1.0 - 1e-14));
      if (p >= 0) CHECK(rel_diff(series::weighted_geometric(p, n, rho), direct) < 1e-14);
    }
  }
}

TEST_CASE("double Bessel sums against brute force, inside their tail bounds") {
  using series::Kernel;
  const std::pair<Kernel, std::pair<int, int>> cases[] = {
      {Kernel::k1, {-1, 1}}, {Kernel::k1_prime_abs, {0, 2}}, {Kernel::k0, {0, 2}}};
  for (double ratio : {0.3, 1.0, 2.5}) {
    for (const auto& [kernel, powers] : cases) {
      const auto r = series::double_bessel_sum(kernel, ratio, powers.first, powers.second, SeriesControl{});
      const double brute = brute_double_sum(kernel, ratio, powers.first, powers.second, 200);
      CAPTURE(ratio);
      CHECK(std::abs(r.value - brute) <= r.tail_bound + 1e-15 * brute);
      CHECK(r.tail_bound <= 1e-12 * r.value);
      CHECK(r.outer_terms >= 1);
      CHECK(r.total_terms >= r.outer_terms);
    }
  }
}

TEST_CASE("single Bessel sum") {
  const auto r = series::single_bessel_sum(series::Kernel::k1, 1.0, 1, SeriesControl{});
  double brute = 0.0;
  for (int n = 100; n >= 1; --n) brute += n * specfun::bessel_k(1, double(n));
  CHECK(rel_diff(r.value, brute) < 1e-12);
}

TEST_CASE("series argument validation and budgets") {
  CHECK_THROWS_AS(series::double_bessel_sum(series::Kernel::k0, -1.0, 0, 2, {}), InputError);
  CHECK_THROWS_AS(series::double_bessel_sum(series::Kernel::k0, 1.0, 1, 2, {}), InputError);
  CHECK_THROWS_AS(series::double_bessel_sum(series::Kernel::k0, 1.0, 0, 3, {}), InputError);
  SeriesControl tight;
  tight.max_outer_terms = 2;
  CHECK_THROWS_AS(series::double_bessel_sum(series::Kernel::k0, 0.01, 0, 2, tight), BudgetError);
  SeriesControl bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("direct lattice sum") {
  SUBCASE("square lattice at s = 4 is 4 zeta(2) beta(2)") {
    const double catalan = 0.915965594177219015;
    CHECK(rel_diff(epstein::z2_direct({1.0, 1.0, 4.0}, loose(1e-10)), 4.0 * kPi * kPi / 6.0 * catalan) < 1e-9);
  }
  SUBCASE("radius doubling is self-consistent") {
    const double coarse = epstein::z2_direct({1.0, 1.7, 3.0}, loose(1e-8));
    const double fine = epstein::z2_direct({1.0, 1.7, 3.0}, loose(1e-10));
    CHECK(rel_diff(coarse, fine) < 1e-8);
  }
  SUBCASE("homogeneity of degree -s") {
    const double base = epstein::z2_direct({1.0, 2.0, 3.0}, loose(1e-9));
    CHECK(rel_diff(epstein::z2_direct({2.0, 4.0, 3.0}, loose(1e-9)), base / 8.0) < 1e-11);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(epstein::z2_direct({1.0, 1.0, 2.0}, {}), InputError);
    CHECK_THROWS_AS(epstein::z2_direct({0.0, 1.0, 3.0}, {}), InputError);
    SeriesControl capped = loose(1e-14);
    capped.max_outer_terms = 16;
    CHECK_THROWS_AS(epstein::z2_direct({1.0, 1.0, 3.0}, capped), BudgetError);
  }
}

TEST_CASE("Bessel route at s = 3") {
  SUBCASE("matches the direct sum") {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}, std::pair{0.5, 1.5}, std::pair{3.0, 1.0},
                        std::pair{0.8, 0.6}}) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(rel_diff(epstein::z2_s3_fast(a, b), epstein::z2_direct({a, b, 3.0}, loose(1e-9))) < 1e-6);
    }
    CHECK(rel_diff(epstein::z2_s3_fast(1.0, 1.0), 9.0336216831) < 1e-9);
  }
  SUBCASE("symmetry on a log grid") {
    for (double r : testing::log_grid(0.1, 10.0, 21)) {
      CHECK(rel_diff(epstein::z2_s3_fast(r, 1.0), epstein::z2_s3_fast(1.0, r)) < 1e-11);
    }
  }
  SUBCASE("homogeneity") {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.0}}) {
      for (double lam : {0.5, 2.0, 7.0}) {
        CHECK(rel_diff(epstein::z2_s3_fast(lam * a, lam * b), epstein::z2_s3_fast(a, b) / (lam * lam * lam)) < 1e-11);
      }
    }
  }
  SUBCASE("strictly decreasing in a") {
    double prev = INFINITY;
    for (double a : testing::log_grid(0.1, 10.0, 30)) {
      const double z = epstein::z2_s3_fast(a, 1.0);
      CHECK(z < prev);
      prev = z;
    }
  }
  SUBCASE("the tail bound is reported") {
    const auto d = epstein::z2_s3_fast_detailed(2.0, 1.0, SeriesControl{});
    CHECK(d.tail_bound >= 0.0);
    CHECK(d.tail_bound <= 1e-12 * d.value);
  }
}

TEST_CASE("reflection and continuation") {
  const double z3 = epstein::z2_s3_fast(1.0, 1.0);
  CHECK(rel_diff(epstein::z2_continued(1.0, 1.0, -1.0), -z3 / (4.0 * kPi * kPi)) < 1e-13);
  // Z2(1, 2; -1) reflected back lands on Z2(1, 1/2; 3)
  const double continued = epstein::z2_continued(1.0, 2.0, -1.0);
  CHECK(rel_diff(epstein::reflect_z2(1.0, 2.0, -1.0, continued), epstein::z2_s3_fast(1.0, 0.5)) < 1e-10);
  CHECK(rel_diff(epstein::z2_continued(1.0, 2.0, 3.0), epstein::z2_s3_fast(1.0, 2.0)) < 1e-15);
  CHECK(rel_diff(epstein::z2_continued(1.0, 1.0, 4.0), 6.0268120398597) < 1e-9);
  CHECK_THROWS_AS(epstein::z2_continued(1.0, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(epstein::z2_continued(1.0, 1.0, 0.0), InputError);
}

TEST_CASE("auxiliary single-index sum") {
  SUBCASE("Bessel and direct routes agree at s = 3") {
    for (auto [m, a] : {std::pair{kPi, 1.0}, std::pair{1.0, 0.7}, std::pair{2.0, 3.0}}) {
      const double bessel = epstein::s_aux(m, a, 3.0, {}, epstein::SAuxRoute::bessel);
      const double direct = epstein::s_aux(m, a, 3.0, {}, epstein::SAuxRoute::direct);
      CHECK(rel_diff(bessel, direct) < 1e-10);
    }
  }
  SUBCASE("large m a leaves only the Gamma term") {
    const double m = 10.0, a = 2.0;
    const double leading = a / (m * m) * kPi;
    CHECK(rel_diff(epstein::s_aux(m, a, 3.0), leading) < 1e-15);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(epstein::s_aux(1.0, 1.0, 4.0, {}, epstein::SAuxRoute::bessel), InputError);
    CHECK_THROWS_AS(epstein::s_aux(1.0, 1.0, 0.5, {}, epstein::SAuxRoute::direct), InputError);
  }
}
