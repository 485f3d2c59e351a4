#include "lackawalk_cli/reports.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lackawalk::cli {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const SearchCurve& curve, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  out << "t,success_prob,norm\n";
  const std::size_t last = curve.success.size() - 1;
  for (std::size_t t = 0; t < curve.success.size(); ++t) {
    if (t % stride != 0 && t != last) continue;
    out << t << ',' << format_double(curve.success[t]) << ',' << format_double(curve.norm[t]) << '\n';
  }
}

void write_distance_csv(std::ostream& out, std::span<const WalkDistance> rows) {
  out << "t,d_exact,d_embed,d_total\n";
  for (const auto& r : rows)
    out << r.t << ',' << format_double(r.exact) << ',' << format_double(r.embedded) << ','
        << format_double(r.total) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "N,HT,cot_qht,max_success_prob,thm2_distance_max\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_double(r.hitting_time) << ',' << format_double(r.cot_qht) << ','
        << format_double(r.max_success_prob) << ',' << format_double(r.thm2_distance_max) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty input");
  table.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size())
      throw std::runtime_error("parse_csv: line " + std::to_string(line_no) + " has " +
                               std::to_string(cells.size()) + " fields, header has " +
                               std::to_string(table.header.size()));
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      const double v = std::stod(c, &used);
      if (used != c.size()) throw std::runtime_error("parse_csv: bad number '" + c + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double read_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

Json to_json(const ClaimReport& r) {
  Json metrics = Json::object();
  for (const auto& [key, value] : r.metrics) metrics[key] = number(value);
  return {{"claim", r.claim},
          {"instance", r.instance},
          {"hypothesis_met", r.hypothesis_met},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"residual", number(r.residual)},
          {"tolerance", number(r.tolerance)},
          {"pass", r.pass},
          {"runtime_seconds", r.runtime_seconds},
          {"metrics", metrics},
          {"notes", r.notes}};
}

ClaimReport claim_from_json(const Json& j) {
  ClaimReport r;
  r.claim = j.at("claim").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.hypothesis_met = j.at("hypothesis_met").get<bool>();
  r.lhs = read_number(j.at("lhs"));
  r.rhs = read_number(j.at("rhs"));
  r.residual = read_number(j.at("residual"));
  r.tolerance = read_number(j.at("tolerance"));
  r.pass = j.at("pass").get<bool>();
  r.runtime_seconds = j.at("runtime_seconds").get<double>();
  for (const auto& [key, value] : j.at("metrics").items()) r.metrics.emplace_back(key, read_number(value));
  r.notes = j.at("notes").get<std::string>();
  return r;
}

}  // namespace lackawalk::cli
