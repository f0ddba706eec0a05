#include "pistonlab/cutofflab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pistonlab/errors.hpp"
#include "pistonlab/series.hpp"
#include "pistonlab/specfun.hpp"

namespace pistonlab::cutoff {
namespace {

using specfun::kPi;

struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

// 1/(e^x - 1) without cancellation near 0.
double bose(double x) { return 1.0 / std::expm1(x); }

quad::ToleranceSpec tight(const quad::ToleranceSpec& tol, double rel) {
  quad::ToleranceSpec out = tol;
  out.rel_tol = std::max(std::min(tol.rel_tol, rel), std::ldexp(1.0, -50));
  return out;
}

// Row sums R(x) = sum_{k>=1} sqrt(x^2 + (k/b)^2) d(k/b) for one fixed
// column spacing 1/b.
class RowSummer {
 public:
  RowSummer(const CutoffSpec& cut, double b, std::size_t columns)
      : cut_(cut), b_(b), columns_(columns), y_edge_(static_cast<double>(columns) / b) {
    y_sq_.reserve(columns);
    weight_.reserve(columns);
    for (std::size_t k = 1; k <= columns; ++k) {
      const double y = static_cast<double>(k) / b;
      y_sq_.push_back(y * y);
      weight_.push_back(cut.d(y));
    }
    tol_.rel_tol = 1e-13;
  }

  struct Row {
    double value;
    double tail;
    double em_correction;
  };

  Row operator()(double x) const {
    const double x_sq = x * x;
    Accumulator acc;
    for (std::size_t i = columns_; i-- > 0;) acc.add(std::sqrt(x_sq + y_sq_[i]) * weight_[i]);

    // h(t) = sqrt(x^2 + (t/b)^2) d(t/b) at t = K.
    const double y = y_edge_;
    const double root = std::sqrt(x_sq + y * y);
    const double h = root * cut_.d(y);
    const double h_prime = (y / b_) / root * cut_.d(y) + root * cut_.d_prime(y) / b_;
    const auto integral = quad::integrate_semi_infinite(
        [&](double t) { return std::sqrt(x_sq + t * t) * cut_.d(t); }, y, tol_, y);
    const double tail = b_ * integral.value - 0.5 * h - h_prime / 12.0;
    return {acc.value() + tail, tail, std::fabs(h_prime) / 12.0};
  }

 private:
  CutoffSpec cut_;
  double b_;
  std::size_t columns_;
  double y_edge_;
  std::vector<double> y_sq_;
  std::vector<double> weight_;
  quad::ToleranceSpec tol_;
};

}  // namespace

void CutoffSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("CutoffSpec: lambda must be positive and finite");
}

double CutoffSpec::d(double t) const {
  const double u = (t + 1.0) / lambda;
  const double base = 1.0 + u * u;
  return 1.0 / (base * base);
}

double CutoffSpec::d_prime(double t) const {
  const double u = (t + 1.0) / lambda;
  const double base = 1.0 + u * u;
  return -4.0 * u / lambda / (base * base * base);
}

CutoffEnergy energy_cutoff_detailed(const casimir::Geometry& g, const CutoffSpec& cut, const CutoffSumOptions& opts) {
  g.validate();
  cut.validate();
  if (!(opts.mode_factor >= 2.0)) throw InputError("energy_cutoff: mode_factor must be at least 2");

  // The summand is symmetric under (a, j) <-> (b, k); fix the orientation so
  // E(a, b) and E(b, a) run identical arithmetic.
  const double a = std::min(g.a, g.b), b = std::max(g.a, g.b);
  const auto count = [&](double side) {
    return static_cast<std::size_t>(std::max(8.0, std::ceil(opts.mode_factor * cut.lambda * side)));
  };
  const std::size_t rows = count(a), columns = count(b);
  if (static_cast<double>(rows) * static_cast<double>(columns) > static_cast<double>(opts.max_modes)) {
    throw BudgetError("energy_cutoff: mode budget exceeded (" + std::to_string(rows) + " x " +
                      std::to_string(columns) + ")");
  }

  const RowSummer row(cut, b, columns);
  const auto phi = [&](double j) { return cut.d(j / a) * row(j / a).value; };

  CutoffEnergy out;
  out.rows = rows;
  out.columns = columns;
  Accumulator block;
  Accumulator tails;
  double em = 0.0;
  for (std::size_t j = rows; j >= 1; --j) {
    const double x = static_cast<double>(j) / a;
    const auto r = row(x);
    const double weight = cut.d(x);
    block.add(weight * r.value);
    tails.add(weight * r.tail);
    em += weight * r.em_correction;
  }

  // Rows beyond the block: Euler-Maclaurin in j with a five-point derivative.
  const double edge = static_cast<double>(rows);
  const double phi_prime =
      (-phi(edge + 2.0) + 8.0 * phi(edge + 1.0) - 8.0 * phi(edge - 1.0) + phi(edge - 2.0)) / 12.0;
  quad::ToleranceSpec tol;
  tol.rel_tol = 1e-12;
  const auto outer = quad::integrate_semi_infinite(phi, edge, tol, edge);
  const double outer_tail = outer.value - 0.5 * phi(edge) - phi_prime / 12.0;
  em += std::fabs(phi_prime) / 12.0;

  out.value = 0.5 * kPi * (block.value() + outer_tail);
  out.tail = 0.5 * kPi * (tails.value() + outer_tail);
  out.em_correction = 0.5 * kPi * em;
  return out;
}

double energy_cutoff(const casimir::Geometry& g, const CutoffSpec& cut, const CutoffSumOptions& opts) {
  return energy_cutoff_detailed(g, cut, opts).value;
}

double c1_quadrature(const CutoffSpec& cut, const quad::ToleranceSpec& tol) {
  cut.validate();
  const auto result = quad::integrate_quadrant(
      [&](double u, double v) { return std::sqrt(u * u + v * v) * cut.d(u) * cut.d(v); }, tol, cut.lambda);
  return 0.5 * kPi * result.value;
}

double c2_quadrature(const CutoffSpec& cut, const quad::ToleranceSpec& tol) {
  cut.validate();
  const double d0 = cut.d(0.0);
  const auto result =
      quad::integrate_semi_infinite([&](double t) { return t * cut.d(t) * d0; }, 0.0, tol, cut.lambda);
  return -kPi * result.value;
}

double FitReport::max_relative_residual() const {
  double worst = 0.0;
  for (const auto& r : residuals) worst = std::max(worst, std::fabs(r.residual) / std::fabs(r.energy_ar));
  return worst;
}

FitReport fit_counterterms(std::span<const casimir::Geometry> geoms, const CutoffSpec& cut,
                           const quad::ToleranceSpec& tol, const CutoffSumOptions& opts) {
  cut.validate();
  if (geoms.size() < 4) throw InputError("fit_counterterms: need at least 4 geometries");

  const std::size_t n = geoms.size();
  std::vector<double> area(n), perimeter(n);
  for (std::size_t i = 0; i < n; ++i) {
    geoms[i].validate();
    area[i] = geoms[i].a * geoms[i].b;
    perimeter[i] = geoms[i].a + geoms[i].b;
  }

  // Condition number of the n x 2 design from the eigenvalues of its Gram matrix.
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g11 += area[i] * area[i];
    g12 += area[i] * perimeter[i];
    g22 += perimeter[i] * perimeter[i];
  }
  const double trace = g11 + g22;
  const double det = g11 * g22 - g12 * g12;
  const double disc = std::sqrt(std::max(0.0, 0.25 * trace * trace - det));
  const double lam_max = 0.5 * trace + disc;
  const double lam_min = det / lam_max;
  const double condition = lam_min > 0.0 ? std::sqrt(lam_max / lam_min) : INFINITY;
  if (!(condition < 1e6)) {
    throw NumericalError("fit_counterterms: ill-conditioned design (condition number " + std::to_string(condition) +
                         ")");
  }

  FitReport report;
  report.lambda = cut.lambda;
  report.condition_number = condition;
  std::vector<double> target(n), energy(n);
  for (std::size_t i = 0; i < n; ++i) {
    energy[i] = casimir::energy_ar(geoms[i]).total;
    target[i] = energy_cutoff(geoms[i], cut, opts) - energy[i];
  }

  // Modified Gram-Schmidt QR of [area, perimeter].
  const auto dot = [n](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
  };
  const double r11 = std::sqrt(dot(area, area));
  std::vector<double> q1(n), q2(n);
  for (std::size_t i = 0; i < n; ++i) q1[i] = area[i] / r11;
  const double r12 = dot(q1, perimeter);
  for (std::size_t i = 0; i < n; ++i) q2[i] = perimeter[i] - r12 * q1[i];
  const double r22 = std::sqrt(dot(q2, q2));
  for (std::size_t i = 0; i < n; ++i) q2[i] /= r22;

  report.c2_fit = dot(q2, target) / r22;
  report.c1_fit = (dot(q1, target) - r12 * report.c2_fit) / r11;
  report.c1_quad = c1_quadrature(cut, tol);
  report.c2_quad = c2_quadrature(cut, tol);
  for (std::size_t i = 0; i < n; ++i) {
    const double residual = target[i] - report.c1_fit * area[i] - report.c2_fit * perimeter[i];
    report.residuals.push_back({geoms[i], energy[i], residual});
  }
  return report;
}

IInfinityCheck identity_I_infinity(const casimir::Geometry& g, const quad::ToleranceSpec& tol) {
  g.validate();
  const double a = g.a, b = g.b;
  const double decay = 1.0 / a;
  IInfinityCheck out{};

  const auto reduced = quad::integrate_semi_infinite(
      [&](double v) { return v * v * bose(2.0 * kPi * a * v); }, 0.0, tight(tol, 1e-12), decay);
  out.reduced = -0.5 * kPi * a * b * reduced.value;

  quad::ToleranceSpec inner_tol = tight(tol, 1e-11);
  const auto unreduced = quad::integrate_semi_infinite(
      [&](double u) {
        return quad::integrate_semi_infinite(
                   [&](double v) { return std::sqrt((v - u) * (v + u)) * bose(2.0 * kPi * a * v); }, u, inner_tol,
                   decay)
            .value;
      },
      0.0, tight(tol, 1e-10), decay);
  out.unreduced = -2.0 * a * b * unreduced.value;

  out.closed_form = -specfun::riemann_zeta(3.0) * b / (8.0 * kPi * kPi * a * a);
  return out;
}

Sj3Check identity_sj3(int j, const casimir::Geometry& g, const quad::ToleranceSpec& tol) {
  g.validate();
  if (j < 1) throw InputError("identity_sj3: j must be a positive integer");
  const double a = g.a, b = g.b, jd = j;
  const double rate = 2.0 * kPi * jd * b / a;
  Sj3Check out{};

  const auto integral = quad::integrate_semi_infinite(
      [&](double t) { return std::sqrt((t - 1.0) * (t + 1.0)) * bose(rate * t); }, 1.0, tight(tol, 1e-12),
      1.0 / rate);
  out.quadrature = -2.0 * jd * jd * b / (a * a) * integral.value;

  SeriesControl ctrl;
  ctrl.rel_tol = 1e-15;
  const SeriesResult sum = series::single_bessel_sum(series::Kernel::k1, rate, -1, ctrl);
  const double prefactor = jd / (kPi * a);
  out.series = -prefactor * sum.value;
  out.series_tail = prefactor * sum.tail_bound;
  return out;
}

AbelPlanaSides abel_plana_check(AbelPlanaCase which, const quad::ToleranceSpec& tol, double scale) {
  const quad::ToleranceSpec t = tight(tol, 1e-12);
  AbelPlanaSides out{};
  switch (which) {
    case AbelPlanaCase::exp_decay: {
      // F(z) = e^-z: F(0) = 1, int F = 1, i[F(it) - F(-it)] = 2 sin t.
      out.left = scale * (-1.0 / std::expm1(-1.0));
      const auto bracket = quad::integrate_semi_infinite(
          [](double x) { return 2.0 * std::sin(x) * bose(2.0 * kPi * x); }, 0.0, t, 0.5);
      out.right = scale * (0.5 + 1.0 + bracket.value);
      break;
    }
    case AbelPlanaCase::rational: {
      // F(z) = (z + 1)^-2: F(0) = 1, int F = 1, i[F(it) - F(-it)] = 4t/(1 + t^2)^2.
      out.left = scale * kPi * kPi / 6.0;
      const auto bracket = quad::integrate_semi_infinite(
          [](double x) {
            const double w = 1.0 + x * x;
            return 4.0 * x / (w * w) * bose(2.0 * kPi * x);
          },
          0.0, t, 0.5);
      out.right = scale * (0.5 + 1.0 + bracket.value);
      break;
    }
    default:
      throw InputError("abel_plana_check: unknown case");
  }
  return out;
}

}  // namespace pistonlab::cutoff
