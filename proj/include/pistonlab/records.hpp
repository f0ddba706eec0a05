#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pistonlab/casimir.hpp"

// Flat records emitted by the command-line front end, with CSV and JSON
// encodings.  Numbers use the shortest decimal form that reads back to the
// same double, independent of locale.

namespace pistonlab::records {

struct OutputRecord {
  double a = 0.0;
  double b = 0.0;
  double ratio = 0.0;
  double energy_total = 0.0;
  std::string energy_route;
  double force_eq11 = 0.0;
  double force_eq11_tail = 0.0;
  double force_eq14 = 0.0;
  double force_eq14_tail = 0.0;
  double force_asym_small = 0.0;
  double force_asym_large = 0.0;
  std::string force_route;  // the route force_auto would pick
  bool eq11_regime_warning = false;
  bool eq14_regime_warning = false;

  bool operator==(const OutputRecord&) const = default;
};

inline constexpr std::array<std::string_view, 14> kOutputFields = {
    "a",          "b",          "ratio",           "energy_total",     "energy_route",
    "force_eq11", "force_eq11_tail", "force_eq14", "force_eq14_tail",  "force_asym_small",
    "force_asym_large", "force_route", "eq11_regime_warning", "eq14_regime_warning"};

struct PistonRecord {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
  double force_finite_l = 0.0;
  double force_finite_l_tail = 0.0;
  double force_fd = 0.0;
  double force_fd_error = 0.0;
};

struct CutoffRecord {
  double lambda = 0.0;
  double c1_fit = 0.0;
  double c2_fit = 0.0;
  double c1_quad = 0.0;
  double c2_quad = 0.0;
  double c1_ratio = 0.0;
  double c2_ratio = 0.0;
  double max_relative_residual = 0.0;
  double condition_number = 0.0;
};

// All analytic routes for one geometry.
OutputRecord make_record(const casimir::Geometry& g, casimir::EnergyRoute route, const SeriesControl& ctrl);

std::string format_number(double x);

std::string to_csv(std::span<const OutputRecord> rows);
std::string to_json(std::span<const OutputRecord> rows);
std::string to_csv(const PistonRecord& row);
std::string to_json(const PistonRecord& row);
std::string to_csv(std::span<const CutoffRecord> rows);
std::string to_json(std::span<const CutoffRecord> rows);

// Inverse of to_csv for OutputRecord; throws InputError on malformed input.
std::vector<OutputRecord> parse_csv(std::string_view text);

// Throws NumericalError naming the first non-finite field.
void require_finite(const OutputRecord& r);

}  // namespace pistonlab::records
