#include "pistonlab/records.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "pistonlab/errors.hpp"

namespace pistonlab::records {
namespace {

using nlohmann::ordered_json;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("parse_csv: bad number '" + std::string(s) + "'");
  }
  return value;
}

bool parse_flag(std::string_view s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw InputError("parse_csv: bad flag '" + std::string(s) + "'");
}

ordered_json record_json(const OutputRecord& r) {
  ordered_json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["ratio"] = r.ratio;
  j["energy_total"] = r.energy_total;
  j["energy_route"] = r.energy_route;
  j["force_eq11"] = r.force_eq11;
  j["force_eq11_tail"] = r.force_eq11_tail;
  j["force_eq14"] = r.force_eq14;
  j["force_eq14_tail"] = r.force_eq14_tail;
  j["force_asym_small"] = r.force_asym_small;
  j["force_asym_large"] = r.force_asym_large;
  j["force_route"] = r.force_route;
  j["eq11_regime_warning"] = r.eq11_regime_warning;
  j["eq14_regime_warning"] = r.eq14_regime_warning;
  return j;
}

}  // namespace

OutputRecord make_record(const casimir::Geometry& g, casimir::EnergyRoute route, const SeriesControl& ctrl) {
  g.validate();
  OutputRecord r;
  r.a = g.a;
  r.b = g.b;
  r.ratio = g.aspect();
  const auto energy = casimir::energy_ar(g, route, ctrl);
  r.energy_total = energy.total;
  r.energy_route = std::string(casimir::to_string(route));
  const auto eq11 = casimir::force_infinite(g, ctrl);
  const auto eq14 = casimir::force_alt(g, ctrl);
  r.force_eq11 = eq11.value;
  r.force_eq11_tail = eq11.tail_bound;
  r.force_eq14 = eq14.value;
  r.force_eq14_tail = eq14.tail_bound;
  r.force_asym_small = casimir::force_asym_small_a(g).value;
  r.force_asym_large = casimir::force_asym_large_a(g).value;
  r.force_route = std::string(casimir::to_string(g.a >= g.b ? casimir::ForceRoute::eq11 : casimir::ForceRoute::eq14));
  r.eq11_regime_warning = eq11.regime_warning;
  r.eq14_regime_warning = eq14.regime_warning;
  require_finite(r);
  return r;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NumericalError("format_number: refusing to serialize a non-finite value");
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void require_finite(const OutputRecord& r) {
  const std::pair<const char*, double> fields[] = {
      {"a", r.a},
      {"b", r.b},
      {"ratio", r.ratio},
      {"energy_total", r.energy_total},
      {"force_eq11", r.force_eq11},
      {"force_eq11_tail", r.force_eq11_tail},
      {"force_eq14", r.force_eq14},
      {"force_eq14_tail", r.force_eq14_tail},
      {"force_asym_small", r.force_asym_small},
      {"force_asym_large", r.force_asym_large}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) throw NumericalError(std::string("non-finite value in field ") + name);
  }
}

std::string to_csv(std::span<const OutputRecord> rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kOutputFields.size(); ++i) out << (i ? "," : "") << kOutputFields[i];
  out << '\n';
  for (const auto& r : rows) {
    require_finite(r);
    out << format_number(r.a) << ',' << format_number(r.b) << ',' << format_number(r.ratio) << ','
        << format_number(r.energy_total) << ',' << r.energy_route << ',' << format_number(r.force_eq11) << ','
        << format_number(r.force_eq11_tail) << ',' << format_number(r.force_eq14) << ','
        << format_number(r.force_eq14_tail) << ',' << format_number(r.force_asym_small) << ','
        << format_number(r.force_asym_large) << ',' << r.force_route << ',' << (r.eq11_regime_warning ? 1 : 0)
        << ',' << (r.eq14_regime_warning ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string to_json(std::span<const OutputRecord> rows) {
  ordered_json array = ordered_json::array();
  for (const auto& r : rows) {
    require_finite(r);
    array.push_back(record_json(r));
  }
  return array.dump(2) + "\n";
}

std::string to_csv(const PistonRecord& r) {
  std::ostringstream out;
  out << "L,a,b,force_finite_l,force_finite_l_tail,force_fd,force_fd_error\n";
  out << format_number(r.L) << ',' << format_number(r.a) << ',' << format_number(r.b) << ','
      << format_number(r.force_finite_l) << ',' << format_number(r.force_finite_l_tail) << ','
      << format_number(r.force_fd) << ',' << format_number(r.force_fd_error) << '\n';
  return out.str();
}

std::string to_json(const PistonRecord& r) {
  for (double v : {r.L, r.a, r.b, r.force_finite_l, r.force_finite_l_tail, r.force_fd, r.force_fd_error}) {
    if (!std::isfinite(v)) throw NumericalError("non-finite value in piston record");
  }
  ordered_json j;
  j["L"] = r.L;
  j["a"] = r.a;
  j["b"] = r.b;
  j["force_finite_l"] = r.force_finite_l;
  j["force_finite_l_tail"] = r.force_finite_l_tail;
  j["force_fd"] = r.force_fd;
  j["force_fd_error"] = r.force_fd_error;
  return ordered_json::array({j}).dump(2) + "\n";
}

std::string to_csv(std::span<const CutoffRecord> rows) {
  std::ostringstream out;
  out << "lambda,c1_fit,c2_fit,c1_quad,c2_quad,c1_ratio,c2_ratio,max_relative_residual,condition_number\n";
  for (const auto& r : rows) {
    out << format_number(r.lambda) << ',' << format_number(r.c1_fit) << ',' << format_number(r.c2_fit) << ','
        << format_number(r.c1_quad) << ',' << format_number(r.c2_quad) << ',' << format_number(r.c1_ratio) << ','
        << format_number(r.c2_ratio) << ',' << format_number(r.max_relative_residual) << ','
        << format_number(r.condition_number) << '\n';
  }
  return out.str();
}

std::string to_json(std::span<const CutoffRecord> rows) {
  ordered_json array = ordered_json::array();
  for (const auto& r : rows) {
    for (double v : {r.lambda, r.c1_fit, r.c2_fit, r.c1_quad, r.c2_quad, r.c1_ratio, r.c2_ratio,
                     r.max_relative_residual, r.condition_number}) {
      if (!std::isfinite(v)) throw NumericalError("non-finite value in cutoff record");
    }
    ordered_json j;
    j["lambda"] = r.lambda;
    j["c1_fit"] = r.c1_fit;
    j["c2_fit"] = r.c2_fit;
    j["c1_quad"] = r.c1_quad;
    j["c2_quad"] = r.c2_quad;
    j["c1_ratio"] = r.c1_ratio;
    j["c2_ratio"] = r.c2_ratio;
    j["max_relative_residual"] = r.max_relative_residual;
    j["condition_number"] = r.condition_number;
    array.push_back(j);
  }
  return array.dump(2) + "\n";
}

std::vector<OutputRecord> parse_csv(std::string_view text) {
  std::vector<OutputRecord> rows;
  bool header = true;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != kOutputFields.size()) throw InputError("parse_csv: wrong number of columns");
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] != kOutputFields[i]) throw InputError("parse_csv: unexpected header");
      }
      header = false;
      continue;
    }
    OutputRecord r;
    r.a = parse_double(cells[0]);
    r.b = parse_double(cells[1]);
    r.ratio = parse_double(cells[2]);
    r.energy_total = parse_double(cells[3]);
    r.energy_route = std::string(cells[4]);
    r.force_eq11 = parse_double(cells[5]);
    r.force_eq11_tail = parse_double(cells[6]);
    r.force_eq14 = parse_double(cells[7]);
    r.force_eq14_tail = parse_double(cells[8]);
    r.force_asym_small = parse_double(cells[9]);
    r.force_asym_large = parse_double(cells[10]);
    r.force_route = std::string(cells[11]);
    r.eq11_regime_warning = parse_flag(cells[12]);
    r.eq14_regime_warning = parse_flag(cells[13]);
    rows.push_back(std::move(r));
  }
  if (header) throw InputError("parse_csv: missing header");
  return rows;
}

}  // namespace pistonlab::records
