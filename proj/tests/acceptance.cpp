// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pistonlab/casimir.hpp"
#include "pistonlab/cutofflab.hpp"
#include "pistonlab/epstein.hpp"
#include "pistonlab/specfun.hpp"
#include "support.hpp"

using namespace pistonlab;
using casimir::Geometry;
using casimir::PistonGeometry;
using specfun::kPi;
using testing::rel_diff;

namespace {

struct Verdict {
  bool passed = true;
  std::ostringstream detail;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[violated] " << what << "; ";
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void critical_ratio_check(Verdict& v) {
  const auto cr = casimir::critical_ratio(1e-6);
  v.require(cr.root >= 2.73 && cr.root <= 2.75, "root in [2.73, 2.75]");
  v.detail << "root " << fixed(cr.root, 10) << " bracket [" << fixed(cr.bracket_lo, 10) << ", "
           << fixed(cr.bracket_hi, 10) << "]";
}

void energy_routes(Verdict& v) {
  double worst = 0.0;
  for (double r : testing::log_grid(0.1, 10.0, 25)) {
    const double z = casimir::energy_ar({r, 1.0}, casimir::EnergyRoute::zeta_reflection).total;
    const double s = casimir::energy_ar({r, 1.0}, casimir::EnergyRoute::bessel_series).total;
    worst = std::max(worst, std::abs(z - s) / std::abs(s));
  }
  v.require(worst <= 1e-10, "relative difference <= 1e-10");
  v.detail << "25 ratios, max relative difference " << sci(worst);
}

void force_routes(Verdict& v) {
  double worst = 0.0;
  bool negative = true;
  for (double r : testing::log_grid(0.2, 5.0, 25)) {
    const double f11 = casimir::force_infinite({r, 1.0}).value;
    const double f14 = casimir::force_alt({r, 1.0}).value;
    worst = std::max(worst, std::abs(f11 - f14) / std::abs(f11));
    negative = negative && f11 < 0.0 && f14 < 0.0;
  }
  v.require(worst <= 1e-9, "relative difference <= 1e-9");
  v.require(negative, "both routes negative");
  v.detail << "25 ratios in [0.2, 5], max relative difference " << sci(worst) << ", all negative: "
           << (negative ? "yes" : "no");
}

void derivative_consistency(Verdict& v) {
  double worst = 0.0;
  int count = 0;
  for (double r : {0.15, 0.4, 0.8, 1.0, 1.6, 2.2, 2.8}) {
    const double fd = casimir::force_fd_oracle(Geometry{r, 1.0}).value;
    worst = std::max(worst, std::abs(casimir::force_infinite({r, 1.0}).value - fd) / std::abs(fd));
    worst = std::max(worst, std::abs(casimir::force_alt({r, 1.0}).value - fd) / std::abs(fd));
    ++count;
  }
  for (PistonGeometry pg : {PistonGeometry{10, 2, 1}, PistonGeometry{4, 1.3, 1}, PistonGeometry{3, 0.4, 2}}) {
    const double fd = casimir::force_fd_oracle(pg).value;
    worst = std::max(worst, std::abs(casimir::force_finite_L(pg).value - fd) / std::abs(fd));
    ++count;
  }
  v.require(worst <= 1e-7, "relative difference <= 1e-7");
  v.detail << count << " geometries, max relative difference " << sci(worst);
}

void large_a_asymptote(Verdict& v) {
  const double r1 = casimir::force_infinite({2.5, 1.0}).value / casimir::force_asym_large_a({2.5, 1.0}).value;
  const double r2 = casimir::force_infinite({5.0, 1.0}).value / casimir::force_asym_large_a({5.0, 1.0}).value;
  v.require(r1 >= 0.95 && r1 <= 1.05, "ratio at a/b = 2.5 in [0.95, 1.05]");
  v.require(r2 >= 0.98 && r2 <= 1.02, "ratio at a/b = 5 in [0.98, 1.02]");
  v.detail << "ratio " << fixed(r1) << " at a/b = 2.5, " << fixed(r2) << " at a/b = 5";
  v.notes.push_back("first correction of the leading term is 7/(8x), x = 2 pi a/b: 1 + 7/(8x) = " +
                    fixed(1.0 + 7.0 / (16.0 * kPi * 2.5)) + " and " + fixed(1.0 + 7.0 / (16.0 * kPi * 5.0)));
}

void small_a_asymptote(Verdict& v) {
  const Geometry g{0.1, 1.0};
  const double exact = casimir::force_alt(g).value;
  const double rel = std::abs(exact - casimir::force_asym_small_a(g).value) / std::abs(exact);
  v.require(rel <= 1e-10, "relative difference <= 1e-10");
  v.detail << "a/b = 0.1, relative difference " << sci(rel);
}

void parallel_lines(Verdict& v) {
  const double a = 1.0;
  const double lines = specfun::riemann_zeta(3.0) / (8.0 * kPi * a * a * a);
  const double d100 = std::abs(casimir::force_alt({a, 100.0}).value / 100.0 + lines) / lines;
  const double d200 = std::abs(casimir::force_alt({a, 200.0}).value / 200.0 + lines) / lines;
  v.require(d100 <= 0.015, "deviation <= 1.5% at b/a = 100");
  v.require(d200 <= 0.008, "deviation <= 0.8% at b/a = 200");
  v.detail << "deviation " << fixed(100.0 * d100, 3) << "% at b/a = 100, " << fixed(100.0 * d200, 3)
           << "% at b/a = 200";
}

void cutoff_structure(Verdict& v) {
  const std::vector<Geometry> geoms{{1, 1}, {1, 2}, {2, 1}, {1.5, 1.5}, {0.7, 1.3}};
  const auto at50 = cutoff::fit_counterterms(geoms, cutoff::CutoffSpec{50.0});
  const double c2_40 = cutoff::fit_counterterms(geoms, cutoff::CutoffSpec{40.0}).c2_ratio();
  const double c2_60 = cutoff::fit_counterterms(geoms, cutoff::CutoffSpec{60.0}).c2_ratio();
  const double c2_50 = at50.c2_ratio();
  const double spread = (std::max({c2_40, c2_50, c2_60}) - std::min({c2_40, c2_50, c2_60})) / std::abs(c2_50);
  v.require(at50.max_relative_residual() <= 0.01, "fit residuals <= 1% of |E_AR|");
  v.require(at50.c1_ratio() >= 0.98 && at50.c1_ratio() <= 1.02, "c1_fit/c1_quadrature in [0.98, 1.02]");
  v.require(spread <= 0.02, "c2_fit/c2_quadrature stable within 2%");
  v.detail << "max residual/|E_AR| " << fixed(at50.max_relative_residual(), 4) << ", c1 ratio "
           << fixed(at50.c1_ratio()) << ", c2 ratio " << fixed(c2_40, 4) << "/" << fixed(c2_50, 4) << "/"
           << fixed(c2_60, 4) << " at lambda 40/50/60";
  for (const auto& r : at50.residuals) {
    const double a = r.geometry.a, b = r.geometry.b;
    v.notes.push_back("(" + fixed(a, 2) + ", " + fixed(b, 2) + "): residual " + sci(r.residual) + ", E_AR " +
                      sci(r.energy_ar) + ", (pi/12)(a/b + b/a) = " + fixed(kPi / 12.0 * (a / b + b / a), 5));
  }
}

void limit_identities(Verdict& v) {
  double i_inf = 0.0;
  for (Geometry g : {Geometry{1, 1}, Geometry{0.5, 2}, Geometry{2, 0.7}}) {
    const auto c = cutoff::identity_I_infinity(g);
    i_inf = std::max({i_inf, rel_diff(c.reduced, c.closed_form), rel_diff(c.unreduced, c.closed_form)});
  }
  const auto s1 = cutoff::identity_sj3(1, {1.0, 1.0});
  const auto s3 = cutoff::identity_sj3(3, {2.0, 1.0});
  const double sj = std::max(rel_diff(s1.quadrature, s1.series), rel_diff(s3.quadrature, s3.series));
  double ap = 0.0;
  for (auto which : {cutoff::AbelPlanaCase::exp_decay, cutoff::AbelPlanaCase::rational}) {
    const auto s = cutoff::abel_plana_check(which);
    ap = std::max(ap, rel_diff(s.left, s.right));
  }
  v.require(i_inf <= 1e-9, "I_infinity to 1e-9");
  v.require(sj <= 1e-10, "S_j to 1e-10");
  v.require(ap <= 1e-10, "Abel-Plana to 1e-10");
  v.detail << "I_infinity " << sci(i_inf) << ", S_j (j = 1, 3) " << sci(sj) << ", Abel-Plana " << sci(ap);
}

void oracle_anchors(Verdict& v) {
  SeriesControl direct;
  direct.rel_tol = 1e-10;
  const double fast = epstein::z2_s3_fast(1.0, 1.0);
  const double lattice = epstein::z2_direct({1.0, 1.0, 3.0}, direct);
  const double zm1 = specfun::riemann_zeta(-1.0);
  const double z_rel = rel_diff(fast, lattice);
  const double zeta_rel = std::abs(zm1 + 1.0 / 12.0) * 12.0;
  v.require(z_rel <= 1e-6, "Z2(1,1;3) routes within 1e-6");
  v.require(zeta_rel <= 1e-12, "zeta(-1) = -1/12 within 1e-12");
  v.detail << "Z2(1,1;3) fast " << fixed(fast, 12) << " direct " << fixed(lattice, 12) << " (rel " << sci(z_rel)
           << "), zeta(-1) rel error " << sci(zeta_rel);
}

void property_suites(Verdict& v) {
  std::mt19937_64 rng(20071120);
  std::uniform_real_distribution<double> log_ratio(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> log_scale(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> fraction(0.05, 0.95);
  double scaling = 0.0, symmetry = 0.0, antisym = 0.0, midpoint = 0.0;
  const int cases = 250;
  for (int i = 0; i < cases; ++i) {
    const double b = std::exp(log_scale(rng));
    const double a = b * std::exp(log_ratio(rng));
    const double lam = std::exp(log_scale(rng));
    const double L = a / fraction(rng);
    const double e = casimir::energy_ar({a, b}).total;
    scaling = std::max(scaling, rel_diff(casimir::energy_ar({lam * a, lam * b}).total, e / lam));
    scaling = std::max(scaling, rel_diff(casimir::force_auto({lam * a, lam * b}).value,
                                         casimir::force_auto({a, b}).value / (lam * lam)));
    symmetry = std::max(symmetry, rel_diff(e, casimir::energy_ar({b, a}).total));
    const double f = casimir::force_finite_L({L, a, b}).value;
    const double g = casimir::force_finite_L({L, L - a, b}).value;
    const double scale = std::max(std::abs(f), std::abs(g));
    if (scale > 0.0) antisym = std::max(antisym, std::abs(f + g) / scale);
    scaling = std::max(scaling, rel_diff(casimir::force_finite_L({lam * L, lam * a, lam * b}).value, f / (lam * lam)));
    midpoint = std::max(midpoint, std::abs(casimir::force_finite_L({2.0 * a, a, b}).value));
  }
  v.require(scaling <= 1e-11, "scaling within 1e-11");
  v.require(symmetry <= 1e-11, "symmetry within 1e-11");
  v.require(antisym <= 1e-12, "finite-L antisymmetry within 1e-12");
  v.require(midpoint <= 1e-12, "F(L/2) = 0");
  v.detail << cases << " random geometries: scaling " << sci(scaling) << ", symmetry " << sci(symmetry)
           << ", antisymmetry " << sci(antisym) << ", |F(L/2)| " << sci(midpoint);
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Verdict&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "critical ratio", 1.0, critical_ratio_check},
      {2, "energy route equivalence", 1.0, energy_routes},
      {3, "force route equivalence", 1.0, force_routes},
      {4, "derivative consistency", 1.0, derivative_consistency},
      {5, "large-a asymptote", 1.0, large_a_asymptote},
      {6, "small-a asymptote", 1.0, small_a_asymptote},
      {7, "parallel-lines limit", 1.0, parallel_lines},
      {8, "cutoff structure", 120.0, cutoff_structure},
      {9, "limit identities", 10.0, limit_identities},
      {10, "oracle anchors", 30.0, oracle_anchors},
      {11, "property suites", 30.0, property_suites},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::fprintf(stderr, "unknown criterion %d\n", only);
    return 2;
  }
  int failures = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(seconds < c.budget_seconds, "runtime under " + fixed(c.budget_seconds, 0) + " s");
    std::printf("%s %2d %s: %s (%.2f s)\n", v.passed ? "PASS" : "FAIL", c.id, c.name, v.detail.str().c_str(), seconds);
    for (const auto& note : v.notes) std::printf("     note: %s\n", note.c_str());
    failures += v.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
