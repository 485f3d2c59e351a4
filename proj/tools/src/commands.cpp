#include "lackawalk_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "lackawalk/classical.hpp"
#include "lackawalk/spectral.hpp"
#include "lackawalk/szegedy.hpp"
#include "lackawalk/verification.hpp"

namespace lackawalk::cli {

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the first
// exception after all workers finish.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

// Lifted eigenpairs store one edge-space vector each; skip them past this many doubles.
constexpr double kLiftBudget = 4e6;

Json walk_spectrum(const StochasticMatrix& chain, const Distribution& pibar) {
  const Spectrum sp = eigendecompose(Discriminant(chain));
  const auto weights = spectral_weights(sp, pibar);
  Json j;
  j["eigenvalues"] = std::vector<double>(sp.eigenvalues().data(), sp.eigenvalues().data() + sp.size());
  j["theta"] = std::vector<double>(sp.angles().data(), sp.angles().data() + sp.size());
  Json spaces = Json::array();
  for (std::size_t i = 0; i < sp.eigenspaces().size(); ++i) {
    const auto& e = sp.eigenspaces()[i];
    spaces.push_back({{"eigenvalue", e.eigenvalue},
                      {"theta", e.angle},
                      {"dimension", e.dimension},
                      {"overlap_sq", weights.weights[i]}});
  }
  j["eigenspaces"] = spaces;
  j["hitting_time"] = interpolated_hitting_time(sp, pibar);
  j["cotangent_qht"] = cotangent_qht_from_spectrum(sp, pibar);

  const SzegedyWalk walk(chain);
  if (2.0 * static_cast<double>(sp.size()) * static_cast<double>(walk.dimension()) <= kLiftBudget) {
    const auto pairs = lift_eigenpairs(sp, walk);
    const EdgeState init = walk.initial_state(pibar);
    Json list = Json::array();
    for (const auto& p : pairs)
      list.push_back({{"theta", p.theta}, {"overlap_sq", std::norm(p.vector.amplitudes().dot(init.amplitudes()))}});
    j["eigenpairs"] = list;
  } else {
    j["eigenpairs"] = nullptr;
  }
  return j;
}

}  // namespace

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto inst = build_instance(cfg);
  const auto coin = coin_config(cfg, inst);
  const auto curve = search_experiment(inst, coin, cfg.t_max);
  write_trajectory_csv(out, curve, cfg.stride);
  log << inst.describe() << " ell=" << format_double(coin.ell) << " HT=" << format_double(curve.hitting_time)
      << ": max success " << format_double(curve.max) << " at t=" << curve.argmax;
  if (curve.first_half) log << ", first t with success >= 0.5: " << *curve.first_half;
  log << '\n';

  if (!cfg.distances.empty()) {
    const auto rows = walk_distances(inst, coin, curve.success.size() - 1);
    std::ofstream file(cfg.distances);
    if (!file) throw std::runtime_error("cannot open " + cfg.distances);
    write_distance_csv(file, rows);
  }
  return 0;
}

// --- verify -----------------------------------------------------------------

std::vector<ClaimReport> run_claims(const ExperimentConfig& cfg) {
  const bool explicit_claims = !cfg.claims.empty();
  std::vector<std::string> claims = explicit_claims ? cfg.claims : all_claims();
  if (!explicit_claims && cfg.sizes.empty()) std::erase(claims, "thm2");

  std::vector<std::function<ClaimReport()>> tasks;
  std::optional<MarkedInstance> inst;
  const auto instance = [&]() -> const MarkedInstance& {
    if (!inst) inst.emplace(build_instance(cfg));
    return *inst;
  };
  for (const auto& claim : claims) {
    if (claim == "thm2") {
      if (cfg.sizes.empty()) throw std::invalid_argument("claim thm2 needs --sizes");
      tasks.emplace_back([&cfg] {
        std::vector<MarkedInstance> seq;
        for (std::size_t size : cfg.sizes) seq.push_back(build_instance(cfg, size));
        return check_theorem2(seq, cfg.c, 1);
      });
      continue;
    }
    const MarkedInstance& i = instance();
    const CoinConfig coin = coin_config(cfg, i);
    if (claim == "thm1") {
      tasks.emplace_back([&i, coin] { return check_theorem1(i, coin); });
    } else if (claim == "lem1") {
      tasks.emplace_back([&i, coin, t = cfg.t_max] { return check_lemma1(i, coin, t); });
    } else if (claim == "lem2") {
      tasks.emplace_back([&i, coin, n = cfg.n_random, seed = cfg.seed] { return check_lemma2(i, coin, n, seed); });
    } else if (claim == "lem3") {
      tasks.emplace_back([&i] { return check_lemma3(i); });
    } else if (claim == "facts") {
      tasks.emplace_back([&i] { return check_facts(i); });
    } else {
      throw std::invalid_argument("unknown claim '" + claim + "'");
    }
  }

  std::vector<ClaimReport> reports(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t k) { reports[k] = tasks[k](); });
  return reports;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto reports = run_claims(cfg);
  Json array = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    array.push_back(to_json(r));
    const bool counts = r.hypothesis_met;
    ok = ok && (!counts || r.pass);
    log << (r.pass ? "pass " : (counts ? "FAIL " : "fail (hypothesis unmet) ")) << r.claim << ' ' << r.instance
        << " residual=" << format_double(r.residual) << " tol=" << format_double(r.tolerance) << '\n';
  }
  out << array.dump(2) << '\n';
  return ok ? 0 : 1;
}

// --- spectrum ---------------------------------------------------------------

Json spectrum_report(const ExperimentConfig& cfg) {
  const auto inst = build_instance(cfg);
  const double ell = resolved_ell(cfg, inst);
  const double s = resolved_s(cfg, inst);
  const auto pibar = Distribution::uniform_unmarked(inst.size(), inst.marked);
  Json j;
  j["instance"] = inst.describe();
  j["n"] = inst.size();
  j["degree"] = inst.degree();
  j["marked"] = inst.marked;
  j["ell"] = ell;
  j["s"] = s;
  j["interpolated"] = walk_spectrum(interpolated_matrix(walk_matrix(*inst.graph), inst.marked, s), pibar);
  j["lazy_interpolated"] = walk_spectrum(lazy_interpolated_matrix(*inst.graph, inst.marked, ell, s), pibar);
  return j;
}

int cmd_spectrum(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  out << spectrum_report(cfg).dump(2) << '\n';
  return 0;
}

// --- sweep ------------------------------------------------------------------

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  if (cfg.sizes.empty()) throw std::invalid_argument("sweep needs --sizes");
  std::vector<SweepRow> rows(cfg.sizes.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const auto inst = build_instance(cfg, cfg.sizes[i]);
    const auto coin = coin_config(cfg, inst);
    const double s = resolved_s(cfg, inst);
    const auto pibar = Distribution::uniform_unmarked(inst.size(), inst.marked);
    SweepRow& row = rows[i];
    row.n = inst.size();
    row.hitting_time = classical_hitting_time(inst);
    const auto lazy = lazy_interpolated_matrix(*inst.graph, inst.marked, coin.ell, s);
    row.cot_qht = cotangent_qht_from_spectrum(eigendecompose(Discriminant(lazy)), pibar);
    row.max_success_prob = search_experiment(inst, coin, cfg.t_max).max;
    const auto t0 = static_cast<std::size_t>(std::floor(cfg.c * std::sqrt(row.hitting_time)));
    for (const auto& d : walk_distances(inst, coin, t0)) row.thm2_distance_max = std::max(row.thm2_distance_max, d.total);
  });
  return rows;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto rows = run_sweep(cfg);
  write_sweep_csv(out, rows);
  if (rows.size() >= 2) {
    std::vector<double> n;
    std::vector<double> d;
    for (const auto& r : rows) {
      n.push_back(static_cast<double>(r.n));
      d.push_back(r.thm2_distance_max);
    }
    log << "log-log slope of thm2_distance_max against N: " << format_double(log_log_slope(n, d)) << '\n';
  }
  return 0;
}

// --- hitting-time -----------------------------------------------------------

Json hitting_time_report(const ExperimentConfig& cfg) {
  const auto inst = build_instance(cfg);
  const double ell = resolved_ell(cfg, inst);
  const double s = resolved_s(cfg, inst);
  const auto p = walk_matrix(*inst.graph);
  const auto pibar = Distribution::uniform_unmarked(inst.size(), inst.marked);
  Json j;
  j["instance"] = inst.describe();
  j["n"] = inst.size();
  j["ell"] = ell;
  j["s"] = s;
  j["hitting_time"] = hitting_time_exact(p, inst.marked);
  j["interpolated_hitting_time"] =
      interpolated_hitting_time(eigendecompose(Discriminant(interpolated_matrix(p, inst.marked, s))), pibar);
  j["lazy_interpolated_hitting_time"] = interpolated_hitting_time(
      eigendecompose(Discriminant(lazy_interpolated_matrix(*inst.graph, inst.marked, ell, s))), pibar);
  if (cfg.trials > 0) {
    const auto mc = hitting_time_monte_carlo(p, inst.marked, std::nullopt, cfg.trials, cfg.seed, cfg.jobs);
    j["monte_carlo"] = {{"mean", mc.mean},
                        {"std_error", mc.std_error},
                        {"trials", mc.n_trials},
                        {"truncated", mc.truncated},
                        {"step_cap", mc.step_cap},
                        {"seed", cfg.seed}};
  }
  return j;
}

int cmd_hitting_time(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  out << hitting_time_report(cfg).dump(2) << '\n';
  return 0;
}

}  // namespace lackawalk::cli
