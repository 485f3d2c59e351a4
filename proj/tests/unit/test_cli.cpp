#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lackawalk_cli/commands.hpp"
#include "oracles.hpp"

using namespace lackawalk;
using namespace lackawalk::cli;

namespace {

ExperimentConfig config(const std::string& family) {
  ExperimentConfig cfg;
  cfg.family = family;
  return cfg;
}

std::string simulate(const ExperimentConfig& cfg) {
  std::ostringstream out;
  std::ostringstream log;
  REQUIRE(cmd_simulate(cfg, out, log) == 0);
  return out.str();
}

}  // namespace

TEST_CASE("defaults tie s to ell") {
  auto cfg = config("torus");
  cfg.rows = 4;
  cfg.cols = 6;
  const auto inst = build_instance(cfg);
  CHECK(resolved_ell(cfg, inst) == 4.0 / 24.0);
  CHECK(resolved_s(cfg, inst) == 1.0 - (4.0 / 24.0) / 4.0);
  cfg.ell = 0.5;
  CHECK(resolved_s(cfg, inst) == 1.0 - 0.5 / 4.0);
  cfg.s = 0.3;
  CHECK(resolved_s(cfg, inst) == 0.3);
}

TEST_CASE("family parameters") {
  auto cfg = config("johnson");
  cfg.n = 6;
  cfg.k = 2;
  CHECK(build_instance(cfg).size() == 15);
  CHECK(build_instance(cfg, 5).size() == 10);
  cfg = config("torus");
  CHECK(build_instance(cfg, 4).size() == 16);
  cfg = config("paley");
  cfg.q = 13;
  CHECK(build_instance(cfg).degree() == 6);

  CHECK_THROWS(build_instance(config("petersen")));
  cfg = config("cycle");
  cfg.n = 2;
  CHECK_THROWS_AS(build_instance(cfg), GraphError);
  cfg.n = 5;
  cfg.mark = 5;
  CHECK_THROWS(build_instance(cfg));
  CHECK_THROWS(build_instance(config("edge_list")));
}

TEST_CASE("simulate on a triangle with t_max 0") {
  auto cfg = config("cycle");
  cfg.n = 3;
  cfg.t_max = 0;
  std::istringstream in(simulate(cfg));
  const auto table = parse_csv(in);
  CHECK(table.header == std::vector<std::string>{"t", "success_prob", "norm"});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == 0.0);
  CHECK(table.rows[0][1] == 0.0);
}

TEST_CASE("simulate row count follows the hitting time") {
  auto cfg = config("torus");
  cfg.rows = 10;
  cfg.cols = 10;
  const auto inst = build_instance(cfg);
  const double ht = oracle::hitting_time_qr(walk_matrix(*inst.graph), 0);
  const std::string csv = simulate(cfg);
  std::istringstream in(csv);
  const auto table = parse_csv(in);
  CHECK(table.rows.size() == static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(ht))) + 1);
  for (std::size_t t = 0; t < table.rows.size(); ++t) {
    CHECK(table.rows[t][0] == static_cast<double>(t));
    CHECK(std::abs(table.rows[t][2] - 1.0) < 1e-12);
  }
  // byte-identical on a rerun
  CHECK(simulate(cfg) == csv);

  cfg.stride = 5;
  std::istringstream strided(simulate(cfg));
  const auto sparse = parse_csv(strided);
  CHECK(sparse.rows.front()[0] == 0.0);
  CHECK(sparse.rows.back()[0] == table.rows.back()[0]);
  CHECK(sparse.rows[1][1] == table.rows[5][1]);
}

TEST_CASE("CSV numbers read back exactly") {
  SearchCurve curve;
  curve.success = {0.0, 1.0 / 3.0, std::nextafter(0.5, 1.0), 1e-300};
  curve.norm = {1.0, 1.0 - 1e-16, std::sqrt(2.0) / std::sqrt(2.0), 0.1};
  std::stringstream io;
  write_trajectory_csv(io, curve);
  const auto table = parse_csv(io);
  for (std::size_t t = 0; t < curve.success.size(); ++t) {
    CHECK(table.rows[t][1] == curve.success[t]);
    CHECK(table.rows[t][2] == curve.norm[t]);
  }

  std::vector<WalkDistance> rows{{0, 1e-17, 0.3, 0.3 + 1e-17}, {1, 2.0 / 7.0, 0.125, 2.0 / 7.0 + 0.125}};
  std::stringstream dio;
  write_distance_csv(dio, rows);
  const auto dt = parse_csv(dio);
  CHECK(dt.header == std::vector<std::string>{"t", "d_exact", "d_embed", "d_total"});
  CHECK(dt.rows[1][1] == rows[1].exact);
  CHECK(dt.rows[1][3] == rows[1].total);

  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS(parse_csv(ragged));
}

TEST_CASE("claim reports survive a JSON round trip") {
  auto cfg = config("cycle");
  cfg.n = 8;
  cfg.n_random = 3;
  const auto reports = run_claims(cfg);
  CHECK(reports.size() == 5);
  for (const auto& r : reports) {
    const auto back = claim_from_json(Json::parse(to_json(r).dump()));
    CHECK(back.claim == r.claim);
    CHECK(back.instance == r.instance);
    CHECK(back.pass == r.pass);
    CHECK(back.hypothesis_met == r.hypothesis_met);
    CHECK(back.residual == r.residual);
    CHECK(back.lhs == r.lhs);
    CHECK(back.tolerance == r.tolerance);
    REQUIRE(back.metrics.size() == r.metrics.size());
    for (std::size_t i = 0; i < r.metrics.size(); ++i) {
      CHECK(back.metrics[i].first == r.metrics[i].first);
      CHECK(back.metrics[i].second == r.metrics[i].second);
    }
  }

  ClaimReport broken;
  broken.claim = "thm2";
  broken.residual = std::nan("");
  const auto back = claim_from_json(Json::parse(to_json(broken).dump()));
  CHECK(std::isnan(back.residual));
}

TEST_CASE("verify exit code ignores claims whose hypothesis is unmet") {
  auto cfg = config("moebius_ladder");
  cfg.n = 8;
  cfg.claims = {"lem1", "lem3"};
  std::ostringstream out;
  std::ostringstream log;
  CHECK(cmd_verify(cfg, out, log) == 0);
  const auto j = Json::parse(out.str());
  REQUIRE(j.size() == 2);
  CHECK_FALSE(j[0]["hypothesis_met"].get<bool>());
  CHECK_FALSE(j[0]["pass"].get<bool>());

  cfg.claims = {"thm2"};
  CHECK_THROWS(run_claims(cfg));
  cfg.claims = {"bogus"};
  CHECK_THROWS(run_claims(cfg));
}

TEST_CASE("sweep is independent of the worker count") {
  auto cfg = config("cycle");
  cfg.sizes = {6, 10, 14, 18};
  const auto serial = run_sweep(cfg);
  cfg.jobs = 3;
  const auto pooled = run_sweep(cfg);
  REQUIRE(serial.size() == pooled.size());
  std::ostringstream a;
  std::ostringstream b;
  write_sweep_csv(a, serial);
  write_sweep_csv(b, pooled);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  const auto table = parse_csv(in);
  CHECK(table.header == std::vector<std::string>{"N", "HT", "cot_qht", "max_success_prob", "thm2_distance_max"});
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const double n = static_cast<double>(cfg.sizes[i]);
    CHECK(table.rows[i][0] == n);
    CHECK(table.rows[i][1] == doctest::Approx(n * (n + 1.0) / 6.0).epsilon(1e-12));
    CHECK(table.rows[i][4] == serial[i].thm2_distance_max);
  }
}

TEST_CASE("spectrum report") {
  auto cfg = config("complete");
  cfg.n = 6;
  const auto j = spectrum_report(cfg);
  for (const char* walk : {"interpolated", "lazy_interpolated"}) {
    const auto& w = j[walk];
    CHECK(w["eigenvalues"].size() == 6);
    double total = 0.0;
    for (const auto& e : w["eigenspaces"]) total += e["overlap_sq"].get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    double lifted = 0.0;
    for (const auto& e : w["eigenpairs"]) lifted += e["overlap_sq"].get<double>();
    CHECK(lifted == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(j["s"].get<double>() == 1.0 - j["ell"].get<double>() / 5.0);
}

TEST_CASE("hitting-time report") {
  auto cfg = config("cycle");
  cfg.n = 5;
  cfg.trials = 2000;
  const auto j = hitting_time_report(cfg);
  CHECK(j["hitting_time"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(j["monte_carlo"]["trials"].get<std::size_t>() == 2000);
  const double z = std::abs(j["monte_carlo"]["mean"].get<double>() - 5.0) / j["monte_carlo"]["std_error"].get<double>();
  CHECK(z < 4.0);
}
