#include "pistonlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "pistonlab/casimir.hpp"
#include "pistonlab/cutofflab.hpp"
#include "pistonlab/errors.hpp"
#include "pistonlab/records.hpp"
#include "pistonlab/selftest.hpp"

namespace pistonlab::cli {
namespace {

using casimir::Geometry;

constexpr double kReferenceCriticalRatio = 2.74;

constexpr const char* kUnitsNote =
    "Units: hbar = c = 1, lengths in the input unit; energies are 1/length, forces 1/length^2.";

struct Options {
  std::optional<double> rel_tol;
  std::string output;
  std::string format = "csv";

  double a = 0.0;
  double b = 0.0;
  std::optional<double> L;
  std::string route = "series";

  double ratio_min = 0.0;
  double ratio_max = 0.0;
  int points = 0;
  std::string spacing = "linear";
  double b_fixed = 1.0;
  int threads = 1;

  double tol = 1e-6;
  std::string lambdas = "20,40,60";
};

SeriesControl series_control(const Options& o) {
  SeriesControl ctrl;
  if (o.rel_tol) ctrl.rel_tol = *o.rel_tol;
  ctrl.validate();
  return ctrl;
}

quad::ToleranceSpec quad_tolerance(const Options& o) {
  quad::ToleranceSpec tol;
  if (o.rel_tol) tol.rel_tol = *o.rel_tol;
  tol.validate();
  return tol;
}

bool json_format(const Options& o) { return o.format == "json"; }

std::vector<double> sweep_grid(const Options& o) {
  if (!(o.ratio_min < o.ratio_max)) throw InputError("sweep: ratio-min must be below ratio-max");
  if (o.ratio_min < casimir::kMinAspect || o.ratio_max > casimir::kMaxAspect) {
    throw InputError("sweep: ratios must lie in [1e-4, 1e4]");
  }
  if (o.points < 2) throw InputError("sweep: at least 2 points required");
  if (!(o.b_fixed > 0.0) || !std::isfinite(o.b_fixed)) throw InputError("sweep: b must be positive");
  std::vector<double> grid(static_cast<std::size_t>(o.points));
  for (int i = 0; i < o.points; ++i) {
    const double t = double(i) / (o.points - 1);
    grid[i] = o.spacing == "log" ? o.ratio_min * std::pow(o.ratio_max / o.ratio_min, t)
                                 : o.ratio_min + (o.ratio_max - o.ratio_min) * t;
  }
  grid.front() = o.ratio_min;
  grid.back() = o.ratio_max;
  return grid;
}

std::string cmd_energy(const Options& o) {
  const auto route = o.route == "zeta" ? casimir::EnergyRoute::zeta_reflection : casimir::EnergyRoute::bessel_series;
  const records::OutputRecord rec = records::make_record({o.a, o.b}, route, series_control(o));
  const std::span<const records::OutputRecord> rows(&rec, 1);
  return json_format(o) ? records::to_json(rows) : records::to_csv(rows);
}

std::string cmd_force(const Options& o) {
  const SeriesControl ctrl = series_control(o);
  if (!o.L) {
    const records::OutputRecord rec = records::make_record({o.a, o.b}, casimir::EnergyRoute::bessel_series, ctrl);
    const std::span<const records::OutputRecord> rows(&rec, 1);
    return json_format(o) ? records::to_json(rows) : records::to_csv(rows);
  }
  const casimir::PistonGeometry pg{*o.L, o.a, o.b};
  const auto exact = casimir::force_finite_L(pg, ctrl);
  const auto fd = casimir::force_fd_oracle(pg, ctrl);
  const records::PistonRecord rec{pg.L, pg.a, pg.b, exact.value, exact.tail_bound, fd.value,
                                  std::abs(fd.value - exact.value)};
  return json_format(o) ? records::to_json(rec) : records::to_csv(rec);
}

std::string cmd_sweep(const Options& o) {
  const SeriesControl ctrl = series_control(o);
  const std::vector<double> grid = sweep_grid(o);
  if (o.threads < 1) throw InputError("sweep: threads must be at least 1");
  std::vector<records::OutputRecord> rows(grid.size());
  const auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < grid.size(); i += stride) {
      rows[i] = records::make_record({grid[i] * o.b_fixed, o.b_fixed}, casimir::EnergyRoute::bessel_series, ctrl);
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(o.threads), grid.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t t = 1; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t, threads));
  work(0, threads);
  for (auto& job : jobs) job.get();
  return json_format(o) ? records::to_json(rows) : records::to_csv(rows);
}

std::string cmd_critical_ratio(const Options& o) {
  const auto cr = casimir::critical_ratio(o.tol, series_control(o));
  using records::format_number;
  if (json_format(o)) {
    nlohmann::ordered_json j;
    j["root"] = cr.root;
    j["bracket_lo"] = cr.bracket_lo;
    j["bracket_hi"] = cr.bracket_hi;
    j["iterations"] = cr.iterations;
    j["tol"] = o.tol;
    j["reference_value"] = kReferenceCriticalRatio;
    return nlohmann::ordered_json::array({j}).dump(2) + "\n";
  }
  return "root,bracket_lo,bracket_hi,iterations,tol,reference_value\n" + format_number(cr.root) + "," +
         format_number(cr.bracket_lo) + "," + format_number(cr.bracket_hi) + "," + std::to_string(cr.iterations) +
         "," + format_number(o.tol) + "," + format_number(kReferenceCriticalRatio) + "\n";
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("bad list entry '" + std::string(item) + "'");
    }
    out.push_back(value);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string cmd_cutoff_verify(const Options& o) {
  const quad::ToleranceSpec tol = quad_tolerance(o);
  const std::vector<Geometry> geoms{{1, 1}, {1, 2}, {2, 1}, {1.5, 1.5}, {0.7, 1.3}};
  std::vector<records::CutoffRecord> rows;
  for (double lam : parse_list(o.lambdas)) {
    const auto r = cutoff::fit_counterterms(geoms, cutoff::CutoffSpec{lam}, tol);
    rows.push_back({lam, r.c1_fit, r.c2_fit, r.c1_quad, r.c2_quad, r.c1_ratio(), r.c2_ratio(),
                    r.max_relative_residual(), r.condition_number});
  }
  return json_format(o) ? records::to_json(rows) : records::to_csv(rows);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  file << text;
  if (!file) throw InputError("cannot write " + o.output);
}

void add_common(CLI::App* sub, Options& o, bool with_format) {
  sub->add_option("--rel-tol", o.rel_tol, "Relative tolerance for series and quadrature");
  sub->add_option("--output", o.output, "Write results to FILE instead of standard output");
  if (with_format) sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir piston lab: energies, forces and cutoff checks for a 2-D Dirichlet piston"};
  app.footer(kUnitsNote);
  app.require_subcommand(1);
  Options o;

  auto* energy = app.add_subcommand("energy", "Regularized energy of an a x b rectangle");
  energy->add_option("--a", o.a, "Side a")->required();
  energy->add_option("--b", o.b, "Side b")->required();
  energy->add_option("--route", o.route, "Energy route")->check(CLI::IsMember({"zeta", "series"}));
  add_common(energy, o, true);

  auto* force = app.add_subcommand("force", "Piston force, by every applicable route");
  force->add_option("--a", o.a, "Piston distance to the near wall")->required();
  force->add_option("--b", o.b, "Box width")->required();
  force->add_option("--L", o.L, "Box length (omit for an infinitely long box)");
  add_common(force, o, true);

  auto* sweep = app.add_subcommand("sweep", "Records over a grid of aspect ratios a/b");
  sweep->add_option("--ratio-min", o.ratio_min, "Smallest a/b")->required();
  sweep->add_option("--ratio-max", o.ratio_max, "Largest a/b")->required();
  sweep->add_option("--points", o.points, "Number of grid points")->required();
  sweep->add_option("--spacing", o.spacing, "Grid spacing")->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--b", o.b_fixed, "Fixed side b");
  sweep->add_option("--threads", o.threads, "Worker threads (output order is the grid order)");
  add_common(sweep, o, true);

  auto* critical = app.add_subcommand("critical-ratio", "Aspect ratio at which the energy changes sign");
  critical->add_option("--tol", o.tol, "Root tolerance");
  add_common(critical, o, true);

  auto* cutoff_cmd = app.add_subcommand("cutoff-verify", "Counterterm fit of the smooth-cutoff energy");
  cutoff_cmd->add_option("--lambdas", o.lambdas, "Comma-separated cutoff values");
  add_common(cutoff_cmd, o, true);

  auto* self = app.add_subcommand("selftest", "Check the invariants of every module");
  add_common(self, o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (energy->parsed()) {
      emit(o, cmd_energy(o), out);
    } else if (force->parsed()) {
      emit(o, cmd_force(o), out);
    } else if (sweep->parsed()) {
      emit(o, cmd_sweep(o), out);
    } else if (critical->parsed()) {
      emit(o, cmd_critical_ratio(o), out);
    } else if (cutoff_cmd->parsed()) {
      emit(o, cmd_cutoff_verify(o), out);
    } else if (self->parsed()) {
      std::ostringstream report;
      int failures = 0;
      for (const auto& r : selftest::run_all()) {
        report << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        failures += r.passed ? 0 : 1;
      }
      report << (failures == 0 ? "selftest passed" : "selftest FAILED: " + std::to_string(failures) + " check(s)")
             << '\n';
      emit(o, report.str(), out);
      return failures == 0 ? kOk : kSelftestFailure;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kOk;
}

}  // namespace pistonlab::cli
