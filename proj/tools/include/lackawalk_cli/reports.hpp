#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lackawalk/szegedy.hpp"
#include "lackawalk/verification.hpp"

namespace lackawalk::cli {

// insertion-ordered, so reports keep the field order they are built in
using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to read back the same double.
std::string format_double(double x);

/// "t,success_prob,norm", every `stride`-th step plus the last one.
void write_trajectory_csv(std::ostream& out, const SearchCurve& curve, std::size_t stride = 1);
/// "t,d_exact,d_embed,d_total".
void write_distance_csv(std::ostream& out, std::span<const WalkDistance> rows);

struct SweepRow {
  std::size_t n = 0;
  double hitting_time = 0.0;
  double cot_qht = 0.0;
  double max_success_prob = 0.0;
  double thm2_distance_max = 0.0;
};
/// "N,HT,cot_qht,max_success_prob,thm2_distance_max".
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
/// Numeric CSV with one header line; "nan" and "inf" are accepted.
CsvTable parse_csv(std::istream& in);

Json to_json(const ClaimReport& r);
/// NaN residuals are written as null and read back as NaN.
ClaimReport claim_from_json(const Json& j);

}  // namespace lackawalk::cli
