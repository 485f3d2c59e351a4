#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "lackawalk/classical.hpp"
#include "lackawalk/verification.hpp"

using namespace lackawalk;

namespace {

MarkedInstance marked(const GraphFamilySpec& spec, Vertex m = 0) { return MarkedInstance(build_graph(spec), m); }

std::vector<GraphFamilySpec> transitive_instances() {
  return {GraphFamilySpec::cycle(5),     GraphFamilySpec::cycle(8),      GraphFamilySpec::torus(3, 3),
          GraphFamilySpec::complete(6),  GraphFamilySpec::hypercube(3),  GraphFamilySpec::johnson(5, 2),
          GraphFamilySpec::paley(13)};
}

}  // namespace

TEST_CASE("claim report settles on the residual") {
  ClaimReport r;
  r.residual = 1e-10;
  r.tolerance = 1e-9;
  r.settle();
  CHECK(r.pass);
  r.residual = std::nan("");
  r.settle();
  CHECK_FALSE(r.pass);
  r.metrics.emplace_back("x", 2.0);
  CHECK(r.metric("x") == 2.0);
  CHECK_FALSE(r.metric("y").has_value());
}

TEST_CASE("cotangent identity between the lazy and interpolated walks") {
  for (const auto& spec : {GraphFamilySpec::cycle(8), GraphFamilySpec::complete(6), GraphFamilySpec::hypercube(3)}) {
    CAPTURE(spec.describe());
    const auto inst = marked(spec);
    const auto r = check_theorem1(inst, CoinConfig::standard(inst));
    CHECK(r.claim == "thm1");
    CHECK(r.hypothesis_met);
    CHECK(r.residual < 1e-9);
    CHECK(r.pass);
    // lifted-eigenpair route agrees with the discriminant route
    REQUIRE(r.metric("c_lazy_sq_lifted").has_value());
    CHECK(std::abs(*r.metric("c_lazy_sq_lifted") - *r.metric("c_lazy_sq")) < 1e-9);
  }
}

TEST_CASE("cotangent identity residual survives relabeling") {
  const auto g = build_graph(GraphFamilySpec::torus(4, 4));
  std::vector<Vertex> perm(g.size());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::mt19937_64 rng(11);
  std::shuffle(perm.begin(), perm.end(), rng);
  const MarkedInstance a(g, 0);
  const MarkedInstance b(g.relabeled(perm), perm[0]);
  const auto ra = check_theorem1(a, CoinConfig::standard(a));
  const auto rb = check_theorem1(b, CoinConfig::standard(b));
  CHECK(ra.pass);
  CHECK(rb.pass);
  CHECK(std::abs(ra.residual - rb.residual) < 1e-9);
  CHECK(std::abs(ra.lhs - rb.lhs) < 1e-9);
}

TEST_CASE("cotangent identity flags a non-standard loop weight") {
  const auto inst = marked(GraphFamilySpec::cycle(8));
  const auto r = check_theorem1(inst, CoinConfig(2, 0.5));
  CHECK_FALSE(r.hypothesis_met);
  CHECK(std::isfinite(r.residual));
}

TEST_CASE("trajectory, conjugation and eigenvalue-map checks on arc-transitive instances") {
  for (const auto& spec : transitive_instances()) {
    CAPTURE(spec.describe());
    const auto inst = marked(spec);
    const auto cfg = CoinConfig::standard(inst);
    const auto l1 = check_lemma1(inst, cfg);
    CHECK(l1.hypothesis_met);
    CHECK(l1.pass);
    CHECK(*l1.metric("t_max") == std::floor(2.0 * std::sqrt(classical_hitting_time(inst))));
    const auto l2 = check_lemma2(inst, cfg, 10);
    CHECK(l2.pass);
    CHECK(*l2.metric("e_roundtrip") < 1e-12);
    const auto l3 = check_lemma3(inst);
    CHECK(l3.pass);
    CHECK(*l3.metric("eigenvalue_map_residual") < 1e-10);
    CHECK(*l3.metric("eigenvector_residual") < 1e-10);
  }
}

TEST_CASE("trajectory check flags the Moebius ladder") {
  const auto inst = marked(GraphFamilySpec::moebius_ladder(8));
  const auto r = check_lemma1(inst, CoinConfig::standard(inst));
  CHECK_FALSE(r.hypothesis_met);
  MESSAGE("Moebius ladder(8) trajectory gap " << r.residual);
  CHECK(std::isfinite(r.residual));
  // the conjugation identity does not depend on the hypothesis
  CHECK(check_lemma2(inst, CoinConfig::standard(inst), 5).pass);
}

TEST_CASE("conjugation check is deterministic in the seed") {
  const auto inst = marked(GraphFamilySpec::torus(3, 4));
  const auto cfg = CoinConfig::standard(inst);
  CHECK(check_lemma2(inst, cfg, 4, 3).residual == check_lemma2(inst, cfg, 4, 3).residual);
}

TEST_CASE("classical hitting time from pi-bar") {
  const auto inst = marked(GraphFamilySpec::cycle(5));
  CHECK(classical_hitting_time(inst) == doctest::Approx(5.0).epsilon(1e-12));
  const auto k = marked(GraphFamilySpec::complete(9));
  CHECK(classical_hitting_time(k) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("partial-sum bounds") {
  for (const auto& spec : transitive_instances()) {
    CAPTURE(spec.describe());
    const auto inst = marked(spec);
    const auto r = check_facts(inst);
    CHECK(r.pass);
    CHECK(*r.metric("split_consistency") < 1e-9);
    const double ht = *r.metric("hitting_time");
    for (std::size_t t : default_fact_samples(ht)) CHECK(r.metric("small[t=" + std::to_string(t) + "]").has_value());
  }
  const auto samples = default_fact_samples(16.0);
  CHECK(samples == std::vector<std::size_t>{0, 2, 4, 8});
}

TEST_CASE("walk distance report on cycles") {
  std::vector<MarkedInstance> insts;
  for (std::size_t n : {8, 16, 32}) insts.push_back(marked(GraphFamilySpec::cycle(n)));
  const auto one = check_theorem2(insts, 1.0, 1);
  const auto two = check_theorem2(insts, 1.0, 2);
  CHECK(std::isfinite(one.residual));
  CHECK(one.residual == two.residual);
  for (std::size_t n : {8, 16, 32}) {
    const std::string tag = "[N=" + std::to_string(n) + "]";
    CHECK(*one.metric("max_exact" + tag) < 1e-9);
    CHECK(*one.metric("max_total" + tag) > 0.0);
  }
}

TEST_CASE("log-log slope") {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -0.25));
  CHECK(log_log_slope(x, y) == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("search experiment") {
  const auto inst = marked(GraphFamilySpec::complete(16));
  const auto curve = search_experiment(inst, CoinConfig::standard(inst));
  const auto expected = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(curve.hitting_time)));
  CHECK(curve.success.size() == expected + 1);
  CHECK(curve.success[0] == 0.0);
  for (double v : curve.norm) CHECK(std::abs(v - 1.0) < 1e-12);
  CHECK(curve.max == curve.success[curve.argmax]);
  CHECK(curve.max > 0.5);
  REQUIRE(curve.first_half.has_value());
  CHECK(curve.success[*curve.first_half] >= 0.5);

  const auto short_curve = search_experiment(inst, CoinConfig::standard(inst), 0);
  CHECK(short_curve.success.size() == 1);
  CHECK_FALSE(short_curve.first_half.has_value());
}
