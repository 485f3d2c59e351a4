// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed below.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lackawalk/classical.hpp"
#include "lackawalk/coined_walk.hpp"
#include "lackawalk/spectral.hpp"
#include "lackawalk/szegedy.hpp"
#include "lackawalk/verification.hpp"
#include "oracles.hpp"

using namespace lackawalk;

namespace {

constexpr double kCotangentIdentityTol = 1e-9;
constexpr double kTrajectoryTol = 1e-9;
constexpr double kConjugationTol = 1e-11;
constexpr double kEigenvalueMapTol = 1e-10;
constexpr double kDenseStepTol = 1e-12;
constexpr double kCotangentTol = 1e-9;
constexpr double kMonteCarloSigmas = 3.0;
constexpr std::size_t kMonteCarloTrials = 100000;
constexpr double kUnitarityTol = 1e-10;
constexpr double kInvolutionTol = 1e-12;
constexpr double kIsometryTol = 1e-12;
constexpr double kMarkedArcTol = 1e-9;
constexpr double kMoebiusViolation = 1e-6;

constexpr double kBudget1 = 60.0;
constexpr double kBudget2 = 120.0;
constexpr double kBudget5 = 600.0;
constexpr double kBudget9 = 300.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<GraphFamilySpec> criterion1_instances() {
  std::vector<GraphFamilySpec> out;
  for (std::size_t n : {5, 8, 16, 32}) out.push_back(GraphFamilySpec::cycle(n));
  for (std::size_t k : {3, 4, 5}) out.push_back(GraphFamilySpec::torus(k, k));
  for (std::size_t n : {4, 8, 16}) out.push_back(GraphFamilySpec::complete(n));
  for (std::size_t d : {2, 3, 4}) out.push_back(GraphFamilySpec::hypercube(d));
  out.push_back(GraphFamilySpec::johnson(5, 2));
  return out;
}

std::vector<MarkedInstance> marked_instances() {
  std::vector<MarkedInstance> out;
  for (const auto& spec : criterion1_instances()) out.emplace_back(build_graph(spec), 0);
  return out;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Vector init_lazy_vector(const LackadaisicalWalk& walk) {
  const CoinState s = walk.initial_state();
  return s.amplitudes().real();
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& out) {
  double worst = 0.0;
  double worst_dense = 0.0;
  for (const auto& inst : marked_instances()) {
    const auto cfg = CoinConfig::standard(inst);
    const auto r = check_theorem1(inst, cfg);
    out.require(r.hypothesis_met, inst.describe() + " hypothesis");
    out.require(r.residual < kCotangentIdentityTol, inst.describe() + " spectral residual");
    worst = std::max(worst, r.residual);

    // direct route: cotangent QHT of the dense coined walk itself
    const auto dense = oracle::dense_coined(inst, cfg);
    const double lhs = oracle::cotangent_sq_cayley(dense.walk, init_lazy_vector(LackadaisicalWalk(inst, cfg)));
    const double dense_residual = std::abs(lhs - r.rhs);
    out.require(dense_residual < kCotangentIdentityTol, inst.describe() + " dense residual");
    worst_dense = std::max(worst_dense, dense_residual);
  }
  out.detail << "max spectral residual " << worst << ", max dense-L residual " << worst_dense << " (tol "
             << kCotangentIdentityTol << ")";
}

void criterion2(Outcome& out) {
  double worst = 0.0;
  for (const auto& inst : marked_instances()) {
    const auto r = check_lemma1(inst, CoinConfig::standard(inst));
    out.require(r.residual < kTrajectoryTol, inst.describe());
    worst = std::max(worst, r.residual);
  }
  out.detail << "max trajectory distance " << worst << " (tol " << kTrajectoryTol << ")";
}

void criterion3(Outcome& out) {
  double worst = 0.0;
  for (const auto& inst : marked_instances()) {
    const auto r = check_lemma2(inst, CoinConfig::standard(inst), 50);
    out.require(r.residual < kConjugationTol, inst.describe());
    worst = std::max(worst, r.residual);
  }
  out.detail << "max conjugation residual " << worst << " over 50 states (tol " << kConjugationTol << ")";
}

void criterion4(Outcome& out) {
  double worst = 0.0;
  for (const auto& inst : marked_instances()) {
    const auto r = check_lemma3(inst);
    const double map = r.metric("eigenvalue_map_residual").value_or(NAN);
    out.require(map < kEigenvalueMapTol, inst.describe() + " eigenvalue map");
    out.require(r.pass, inst.describe() + " eigenvectors and relations");
    worst = std::max(worst, map);
  }
  out.detail << "max eigenvalue-map residual " << worst << " (tol " << kEigenvalueMapTol << ")";
}

void criterion5(Outcome& out) {
  std::vector<MarkedInstance> insts;
  for (std::size_t k : {4, 6, 8, 10, 12}) insts.emplace_back(build_graph(GraphFamilySpec::torus(k, k)), 0);
  const auto r = check_theorem2(insts, 1.0, 1);
  out.require(r.pass, "slope");
  out.detail << "slope " << r.residual << " (threshold " << kDecaySlopeThreshold << "); max total:";
  for (std::size_t k : {4, 6, 8, 10, 12}) {
    const std::string tag = "[N=" + std::to_string(k * k) + "]";
    out.detail << " N=" << k * k << ":" << r.metric("max_total" + tag).value_or(NAN);
  }
}

void criterion6(Outcome& out) {
  double worst = -INFINITY;
  for (const auto& inst : marked_instances()) {
    const auto r = check_facts(inst);
    out.require(r.hypothesis_met, inst.describe() + " theta0 range");
    out.require(r.pass, inst.describe());
    worst = std::max(worst, r.residual);
  }
  out.detail << "largest partial-sum excess over bound " << worst << " (must be <= " << kBoundSlack << ")";
}

void criterion7(Outcome& out) {
  struct Case {
    GraphFamilySpec spec;
    double threshold;
  };
  const Case cases[] = {{GraphFamilySpec::torus(10, 10), 0.5},
                        {GraphFamilySpec::complete(64), 0.9},
                        {GraphFamilySpec::cycle(64), 0.3}};
  for (const auto& c : cases) {
    const MarkedInstance inst(build_graph(c.spec), 0);
    const auto curve = search_experiment(inst, CoinConfig::standard(inst));
    out.require(curve.max >= c.threshold, inst.describe());
    out.detail << inst.describe() << " max " << curve.max << " at t=" << curve.argmax << " (>= " << c.threshold
               << ", t_max " << curve.success.size() - 1 << "); ";
  }
}

void criterion8(Outcome& out) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  double worst_coined = 0.0;
  double worst_szegedy = 0.0;
  double worst_cot = 0.0;
  for (const auto& inst : marked_instances()) {
    const auto cfg = CoinConfig::standard(inst);
    const LackadaisicalWalk walk(inst, cfg);
    if (walk.dimension() <= oracle::kDenseCoinLimit) {
      const auto dense = oracle::dense_coined(inst, cfg);
      CoinState psi = walk.zero_state();
      for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) psi.amplitudes()(k) = {normal(rng), normal(rng)};
      psi.amplitudes().normalize();
      CoinState a = psi;
      CoinState b = psi;
      walk.step(a);
      walk.step_symmetric_oracle(b);
      worst_coined = std::max(worst_coined, (a.amplitudes() - dense.walk.cast<Complex>() * psi.amplitudes()).cwiseAbs().maxCoeff());
      worst_coined = std::max(worst_coined, (b.amplitudes() - dense.walk_hat.cast<Complex>() * psi.amplitudes()).cwiseAbs().maxCoeff());
    }

    const double s = 1.0 - cfg.ell / static_cast<double>(inst.degree());
    const auto pibar = Distribution::uniform_unmarked(inst.size(), inst.marked);
    const SzegedyWalk plain(interpolated_matrix(walk_matrix(*inst.graph), inst.marked, s));
    const SzegedyWalk lazy(lazy_interpolated_matrix(*inst.graph, inst.marked, cfg.ell, s));
    for (const SzegedyWalk* u : {&plain, &lazy}) {
      if (inst.size() <= oracle::kDenseEdgeLimit) {
        const auto dense = oracle::dense_szegedy(u->chain());
        EdgeState psi = u->zero_state();
        for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) psi.amplitudes()(k) = {normal(rng), normal(rng)};
        psi.amplitudes().normalize();
        const ComplexVector expected = dense.walk.cast<Complex>() * oracle::to_dense(psi);
        u->step(psi);
        worst_szegedy = std::max(worst_szegedy, (oracle::to_dense(psi) - expected).cwiseAbs().maxCoeff());
      }
      const Spectrum sp = eigendecompose(Discriminant(u->chain()));
      const double direct = cotangent_qht_direct(lift_eigenpairs(sp, *u), u->initial_state(pibar));
      const double spectral = cotangent_qht_from_spectrum(sp, pibar);
      worst_cot = std::max(worst_cot, std::abs(direct * direct - spectral * spectral));
    }
  }
  out.require(worst_coined < kDenseStepTol, "coined dense steps");
  out.require(worst_szegedy < kDenseStepTol, "Szegedy dense steps");
  out.require(worst_cot < kCotangentTol, "cotangent routes");
  out.detail << "dense L/L_sym " << worst_coined << ", dense U " << worst_szegedy << ", cotangent " << worst_cot
             << "; Monte Carlo:";

  for (const auto& spec : {GraphFamilySpec::cycle(16), GraphFamilySpec::torus(4, 4), GraphFamilySpec::complete(8)}) {
    const auto g = build_graph(spec);
    const auto p = walk_matrix(g);
    const double exact = hitting_time_exact(p, 0);
    const auto mc = hitting_time_monte_carlo(p, 0, std::nullopt, kMonteCarloTrials, 7, 1);
    const double z = std::abs(mc.mean - exact) / mc.std_error;
    out.require(z <= kMonteCarloSigmas && mc.truncated == 0, spec.describe() + " Monte Carlo");
    out.detail << " " << spec.describe() << " z=" << z;
  }
}

void criterion9(Outcome& out) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;

  // unitarity drift
  {
    const MarkedInstance inst(build_graph(GraphFamilySpec::cycle(64)), 0);
    const LackadaisicalWalk walk(inst, CoinConfig::standard(inst));
    CoinState a = walk.initial_state();
    CoinState b = walk.initial_state();
    for (int t = 0; t < 10000; ++t) {
      walk.step(a);
      walk.step_symmetric_oracle(b);
    }
    const SzegedyWalk u(interpolated_matrix(walk_matrix(*inst.graph), 0, 1.0 - 1.0 / 64.0));
    EdgeState e = u.initial_state(Distribution::uniform_unmarked(64, 0));
    for (int t = 0; t < 10000; ++t) u.step(e);
    const double drift = std::max({std::abs(a.norm() - 1.0), std::abs(b.norm() - 1.0), std::abs(e.norm() - 1.0)});
    out.require(drift < kUnitarityTol, "unitarity drift");
    out.detail << "drift after 1e4 steps " << drift << "; ";
  }

  double involution = 0.0;
  double isometry = 0.0;
  double projection = 0.0;
  double marked_arc = 0.0;
  for (const auto& inst : marked_instances()) {
    const auto cfg = CoinConfig::standard(inst);
    const LackadaisicalWalk walk(inst, cfg);
    CoinState psi = walk.zero_state();
    for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) psi.amplitudes()(k) = {normal(rng), normal(rng)};
    psi.amplitudes().normalize();
    for (auto op : {&LackadaisicalWalk::apply_coin, &LackadaisicalWalk::apply_shift, &LackadaisicalWalk::apply_oracle,
                    &LackadaisicalWalk::apply_symmetric_oracle}) {
      CoinState twice = psi;
      (walk.*op)(twice);
      (walk.*op)(twice);
      involution = std::max(involution, (twice.amplitudes() - psi.amplitudes()).norm());
    }

    const double s = 1.0 - cfg.ell / static_cast<double>(inst.degree());
    const SzegedyWalk plain(interpolated_matrix(walk_matrix(*inst.graph), inst.marked, s));
    const SzegedyWalk lazy(lazy_interpolated_matrix(*inst.graph, inst.marked, cfg.ell, s));
    ComplexVector v(static_cast<Eigen::Index>(inst.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = {normal(rng), normal(rng)};
    for (const SzegedyWalk* u : {&plain, &lazy})
      isometry = std::max(isometry, (u->apply_t_adjoint(u->apply_t(v)) - v).norm() / v.norm());

    EdgeState e = lazy.zero_state();
    for (Eigen::Index k = 0; k < e.amplitudes().size(); ++k) e.amplitudes()(k) = {normal(rng), normal(rng)};
    e.amplitudes().normalize();
    const EdgeState back = isometry_e_adjoint(isometry_e(e, inst), lazy.space(), inst);
    isometry = std::max(isometry, (back.amplitudes() - e.amplitudes()).norm());

    const InterpolationIsometries r(plain, lazy, eigendecompose(Discriminant(plain.chain())));
    EdgeState f = plain.zero_state();
    for (Eigen::Index k = 0; k < f.amplitudes().size(); ++k) f.amplitudes()(k) = {normal(rng), normal(rng)};
    const EdgeState once = r.apply_r2(f);
    const EdgeState twice = r.apply_r2(once);
    projection = std::max(projection, (twice.amplitudes() - once.amplitudes()).norm() / f.norm());

    const auto l1 = check_lemma1(inst, cfg);
    marked_arc = std::max(marked_arc, l1.metric("marked_arc_spread").value_or(NAN));
  }
  out.require(involution < kInvolutionTol, "involutions");
  out.require(isometry < kIsometryTol, "isometries");
  out.require(projection < kIsometryTol, "R2 projection");
  out.require(marked_arc < kMarkedArcTol, "marked-arc equality");
  out.detail << "involution " << involution << ", isometry " << isometry << ", R2 idempotence " << projection
             << ", marked-arc spread " << marked_arc << "; ";

  // the hypothesis fails on the Moebius ladder and so does the symmetry
  for (std::size_t n : {8, 12}) {
    const MarkedInstance inst(build_graph(GraphFamilySpec::moebius_ladder(n)), 0);
    const auto l1 = check_lemma1(inst, CoinConfig::standard(inst));
    const double spread = l1.metric("marked_arc_spread").value_or(NAN);
    out.require(!l1.hypothesis_met, inst.describe() + " hypothesis flag");
    out.require(spread > kMoebiusViolation, inst.describe() + " violation recorded");
    out.detail << inst.describe() << " spread " << spread << ", trajectory gap " << l1.residual << "; ";
  }
}

struct Criterion {
  int id;
  std::string title;
  std::function<void(Outcome&)> run;
  double budget_seconds;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cotangent identity C(L)^2 = (N+1)/N C(U)^2 + 1/(2N-1)", criterion1, kBudget1},
      {2, "L and L_sym trajectories coincide", criterion2, kBudget2},
      {3, "L_sym = E U_lazy E^dagger", criterion3, 0.0},
      {4, "lazy eigenvalue map (N lambda + 1)/(N + 1)", criterion4, 0.0},
      {5, "walk distance decays with N on tori", criterion5, kBudget5},
      {6, "small- and large-angle partial-sum bounds", criterion6, 0.0},
      {7, "search success probability", criterion7, 0.0},
      {8, "oracle equivalences", criterion8, 0.0},
      {9, "invariant suite", criterion9, kBudget9},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = elapsed(start);
    if (c.budget_seconds > 0.0) out.require(seconds < c.budget_seconds, "runtime budget");
    all = all && out.pass;
    std::string detail = out.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    std::printf("%s criterion %d: %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
