#include "lackawalk/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "lackawalk/classical.hpp"
#include "lackawalk/spectral.hpp"
#include "lackawalk/szegedy.hpp"

namespace lackawalk {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

// The two chains every check compares, for a given loop weight.
struct ChainPair {
  StochasticMatrix interpolated;
  StochasticMatrix lazy;
  double s;
};

ChainPair chains(const MarkedInstance& inst, double ell) {
  const double s = 1.0 - ell / static_cast<double>(inst.degree());
  return {interpolated_matrix(walk_matrix(*inst.graph), inst.marked, s),
          lazy_interpolated_matrix(*inst.graph, inst.marked, ell, s), s};
}

double standard_ell(const MarkedInstance& inst) {
  return static_cast<double>(inst.degree()) / static_cast<double>(inst.size());
}

bool is_standard(const MarkedInstance& inst, const CoinConfig& cfg) {
  const double ell = standard_ell(inst);
  return std::abs(cfg.ell - ell) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ell);
}

void append_note(std::string& notes, const std::string& text) {
  if (text.empty()) return;
  if (!notes.empty()) notes += "; ";
  notes += text;
}

// Keep dense eigenvector sets to a few tens of MB.
bool small_enough_to_lift(std::size_t n, std::size_t support) { return 2 * n * support <= 4'000'000; }

}  // namespace

std::optional<double> ClaimReport::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  return std::nullopt;
}

Hypothesis arc_transitive_hypothesis(const RegularGraph& g) {
  try {
    const bool met = is_locally_arc_transitive(g);
    std::string how = g.size() > kDefaultBruteForceLimit ? "family certificate" : "automorphism search";
    return {met, met ? "locally arc-transitive (" + how + ")" : "not locally arc-transitive (" + how + ")"};
  } catch (const UndecidableError& e) {
    return {false, e.what()};
  }
}

double classical_hitting_time(const MarkedInstance& inst) {
  return hitting_time_exact(walk_matrix(*inst.graph), inst.marked);
}

ClaimReport check_theorem1(const MarkedInstance& inst, const CoinConfig& cfg) {
  const auto start = Clock::now();
  ClaimReport r;
  r.claim = "thm1";
  r.instance = inst.describe();
  r.tolerance = kIdentityTolerance;
  const auto hyp = arc_transitive_hypothesis(*inst.graph);
  r.hypothesis_met = hyp.met && is_standard(inst, cfg);
  append_note(r.notes, hyp.note);
  if (!is_standard(inst, cfg)) append_note(r.notes, "hypothesis unmet: ell != d/N");

  const auto n = static_cast<double>(inst.size());
  const auto pair = chains(inst, cfg.ell);
  const Distribution pibar = Distribution::uniform_unmarked(inst.size(), inst.marked);
  const Spectrum spec = eigendecompose(Discriminant(pair.interpolated));
  const Spectrum lazy_spec = eigendecompose(Discriminant(pair.lazy));

  const double cu = cotangent_qht_from_spectrum(spec, pibar);
  const double cl = cotangent_qht_from_spectrum(lazy_spec, pibar);
  r.lhs = cl * cl;
  r.rhs = (n + 1.0) / n * cu * cu + 1.0 / (2.0 * n - 1.0);
  r.residual = std::abs(r.lhs - r.rhs);
  r.metrics.emplace_back("c_interpolated_sq", cu * cu);
  r.metrics.emplace_back("c_lazy_sq", cl * cl);
  r.metrics.emplace_back("ht_s", interpolated_hitting_time(spec, pibar));

  const SzegedyWalk plain(pair.interpolated);
  const SzegedyWalk lazy(pair.lazy);
  if (small_enough_to_lift(inst.size(), lazy.dimension())) {
    const auto pairs = lift_eigenpairs(spec, plain);
    const auto lazy_pairs = lift_eigenpairs(lazy_spec, lazy);
    const double du = cotangent_qht_direct(pairs, plain.initial_state(pibar));
    const double dl = cotangent_qht_direct(lazy_pairs, lazy.initial_state(pibar));
    r.metrics.emplace_back("c_interpolated_sq_lifted", du * du);
    r.metrics.emplace_back("c_lazy_sq_lifted", dl * dl);
  }
  r.settle();
  r.runtime_seconds = seconds_since(start);
  return r;
}

ClaimReport check_lemma1(const MarkedInstance& inst, const CoinConfig& cfg, std::optional<std::size_t> t_max) {
  const auto start = Clock::now();
  ClaimReport r;
  r.claim = "lem1";
  r.instance = inst.describe();
  r.tolerance = kIdentityTolerance;
  const auto hyp = arc_transitive_hypothesis(*inst.graph);
  r.hypothesis_met = hyp.met;
  append_note(r.notes, hyp.note);

  const double ht = classical_hitting_time(inst);
  const std::size_t steps = t_max.value_or(static_cast<std::size_t>(std::floor(2.0 * std::sqrt(ht))));
  const LackadaisicalWalk walk(inst, cfg);
  CoinState a = walk.initial_state();
  CoinState b = walk.initial_state();
  double worst = 0.0;
  double spread = 0.0;
  for (std::size_t t = 0;; ++t) {
    worst = std::max(worst, (a.amplitudes() - b.amplitudes()).norm());
    spread = std::max(spread, marked_arc_spread(a.view(), inst));
    if (t == steps) break;
    walk.step(a);
    walk.step_symmetric_oracle(b);
  }
  r.lhs = worst;
  r.rhs = 0.0;
  r.residual = worst;
  r.metrics.emplace_back("t_max", static_cast<double>(steps));
  r.metrics.emplace_back("hitting_time", ht);
  r.metrics.emplace_back("marked_arc_spread", spread);
  r.settle();
  r.runtime_seconds = seconds_since(start);
  return r;
}

ClaimReport check_lemma2(const MarkedInstance& inst, const CoinConfig& cfg, std::size_t n_random,
                         std::uint64_t seed) {
  const auto start = Clock::now();
  ClaimReport r;
  r.claim = "lem2";
  r.instance = inst.describe();
  r.tolerance = kConjugationTolerance;
  const auto hyp = arc_transitive_hypothesis(*inst.graph);
  r.hypothesis_met = hyp.met && is_standard(inst, cfg);
  append_note(r.notes, hyp.note);
  if (!is_standard(inst, cfg)) append_note(r.notes, "hypothesis unmet: ell != d/N");

  const auto pair = chains(inst, cfg.ell);
  const SzegedyWalk lazy(pair.lazy);
  const LackadaisicalWalk walk(inst, cfg);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  double worst = 0.0;
  double roundtrip = 0.0;
  for (std::size_t i = 0; i < n_random; ++i) {
    CoinState psi = walk.zero_state();
    for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) psi.amplitudes()(k) = {normal(rng), normal(rng)};
    psi.amplitudes().normalize();

    EdgeState pulled = isometry_e_adjoint(psi, lazy.space(), inst);
    roundtrip = std::max(roundtrip, (isometry_e(pulled, inst).amplitudes() - psi.amplitudes()).norm());
    lazy.step(pulled);
    const CoinState pushed = isometry_e(pulled, inst);

    walk.step_symmetric_oracle(psi);
    worst = std::max(worst, (psi.amplitudes() - pushed.amplitudes()).norm());
  }
  r.lhs = worst;
  r.rhs = 0.0;
  r.residual = worst;
  r.metrics.emplace_back("n_random", static_cast<double>(n_random));
  r.metrics.emplace_back("e_roundtrip", roundtrip);
  r.settle();
  r.runtime_seconds = seconds_since(start);
  return r;
}

ClaimReport check_lemma3(const MarkedInstance& inst) {
  const auto start = Clock::now();
  ClaimReport r;
  r.claim = "lem3";
  r.instance = inst.describe();
  r.tolerance = kIdentityTolerance;
  r.hypothesis_met = true;
  append_note(r.notes, "needs only a regular graph with one marked vertex");

  const std::size_t size = inst.size();
  const auto n = static_cast<double>(size);
  const auto pair = chains(inst, standard_ell(inst));
  const Distribution pibar = Distribution::uniform_unmarked(size, inst.marked);
  const Spectrum spec = eigendecompose(Discriminant(pair.interpolated));
  const Discriminant lazy_d(pair.lazy);
  const Spectrum lazy_spec = eigendecompose(lazy_d);
  const auto moved = transport_spectrum(spec, lazy_d);

  const auto mapped = [n](double lambda) { return (n * lambda + 1.0) / (n + 1.0); };
  double map_residual = 0.0;
  double independent_residual = 0.0;
  const Matrix dv = lazy_d.entries() * spec.eigenvectors();
  for (std::size_t k = 0; k < size; ++k) {
    const double mu = spec.eigenvectors().col(idx(k)).dot(dv.col(idx(k)));
    map_residual = std::max(map_residual, std::abs(mu - mapped(spec.eigenvalues()(idx(k)))));
    independent_residual = std::max(
        independent_residual, std::abs(lazy_spec.eigenvalues()(idx(k)) - mapped(spec.eigenvalues()(idx(k)))));
  }

  const double ht = interpolated_hitting_time(spec, pibar);
  const double lazy_ht = interpolated_hitting_time(lazy_spec, pibar);
  const double cu = cotangent_qht_from_spectrum(spec, pibar);
  const double cl = cotangent_qht_from_spectrum(lazy_spec, pibar);
  const double p_m = 1.0 / n;
  const double cot_from_ht = 2.0 * ht - p_m / (1.0 - pair.s * (1.0 - p_m));

  r.lhs = cl * cl;
  r.rhs = (n + 1.0) / n * cu * cu + 1.0 / (2.0 * n - 1.0);
  const double relation = std::abs(r.lhs - r.rhs);
  const double ht_relation = std::abs(lazy_ht - (n + 1.0) / n * ht);
  const double cot_relation = std::abs(cu * cu - cot_from_ht);
  r.residual = std::max({moved.max_residual, map_residual, independent_residual, relation, ht_relation,
                         cot_relation});
  r.metrics.emplace_back("eigenvector_residual", moved.max_residual);
  r.metrics.emplace_back("eigenvalue_map_residual", map_residual);
  r.metrics.emplace_back("independent_spectrum_residual", independent_residual);
  r.metrics.emplace_back("ht_s", ht);
  r.metrics.emplace_back("ht_s_lazy", lazy_ht);
  r.metrics.emplace_back("ht_relation_residual", ht_relation);
  r.metrics.emplace_back("cot_ht_relation_residual", cot_relation);
  r.metrics.emplace_back("cot_relation_residual", relation);
  r.settle();
  r.runtime_seconds = seconds_since(start);
  return r;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope: need two or more points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ClaimReport check_theorem2(std::span<const MarkedInstance> instances, double c, std::size_t jobs) {
  const auto start = Clock::now();
  ClaimReport r;
  r.claim = "thm2";
  r.tolerance = kDecaySlopeThreshold;
  r.rhs = kDecaySlopeThreshold;
  if (instances.size() < 2) throw std::invalid_argument("check_theorem2: need at least two instances");
  if (!(c >= 1.0)) throw std::invalid_argument("check_theorem2: c must be >= 1");

  struct Row {
    double n = 0, ht = 0, exact = 0, embedded = 0, total = 0;
    std::size_t t0 = 0;
  };
  std::vector<Row> rows(instances.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const auto& inst = instances[i];
      Row row;
      row.n = static_cast<double>(inst.size());
      row.ht = classical_hitting_time(inst);
      row.t0 = static_cast<std::size_t>(std::floor(c * std::sqrt(row.ht)));
      for (const auto& d : walk_distances(inst, CoinConfig::standard(inst), row.t0)) {
        row.exact = std::max(row.exact, d.exact);
        row.embedded = std::max(row.embedded, d.embedded);
        row.total = std::max(row.total, d.total);
      }
      rows[i] = row;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < std::max<std::size_t>(1, jobs); ++j) pool.emplace_back(work);
    work();
  }

  r.hypothesis_met = true;
  std::vector<double> ns;
  std::vector<double> totals;
  bool finite = true;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto hyp = arc_transitive_hypothesis(*instances[i].graph);
    r.hypothesis_met = r.hypothesis_met && hyp.met;
    if (!hyp.met) append_note(r.notes, instances[i].describe() + ": " + hyp.note);
    if (!r.instance.empty()) r.instance += " ";
    r.instance += instances[i].describe();
    const auto& row = rows[i];
    const std::string tag = "[N=" + std::to_string(static_cast<std::size_t>(row.n)) + "]";
    r.metrics.emplace_back("hitting_time" + tag, row.ht);
    r.metrics.emplace_back("t0" + tag, static_cast<double>(row.t0));
    r.metrics.emplace_back("max_exact" + tag, row.exact);
    r.metrics.emplace_back("max_embedded" + tag, row.embedded);
    r.metrics.emplace_back("max_total" + tag, row.total);
    finite = finite && std::isfinite(row.total) && row.total > 0.0;
    ns.push_back(row.n);
    totals.push_back(row.total);
  }
  r.metrics.emplace_back("c", c);
  if (finite) {
    r.lhs = log_log_slope(ns, totals);
    r.residual = r.lhs;
  } else {
    r.lhs = r.residual = std::numeric_limits<double>::quiet_NaN();
    append_note(r.notes, "non-finite or zero distance");
  }
  r.settle();
  r.runtime_seconds = seconds_since(start);
  return r;
}

std::vector<std::size_t> default_fact_samples(double hitting_time) {
  const double root = std::sqrt(hitting_time);
  std::vector<std::size_t> out{0, static_cast<std::size_t>(std::floor(root / 2.0)),
                               static_cast<std::size_t>(std::floor(root)),
                               static_cast<std::size_t>(std::floor(2.0 * root))};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClaimReport check_facts(const MarkedInstance& inst, std::span<const std::size_t> t_samples) {
  const auto start = Clock::now();
  ClaimReport r;
  r.claim = "facts";
  r.instance = inst.describe();
  r.tolerance = kBoundSlack;
  r.rhs = 0.0;

  const std::size_t size = inst.size();
  const auto n = static_cast<double>(size);
  const double ht = classical_hitting_time(inst);
  std::vector<std::size_t> samples(t_samples.begin(), t_samples.end());
  if (samples.empty()) samples = default_fact_samples(ht);
  std::sort(samples.begin(), samples.end());

  const double cos0 = 1.0 - 2.0 * std::sqrt((n - 1.0) / (16.0 * ht));
  const double theta0 = std::acos(std::clamp(cos0, -1.0, 1.0));
  r.hypothesis_met = theta0 > 0.0 && theta0 <= M_PI / 2.0 + 1e-15;
  append_note(r.notes, r.hypothesis_met ? "0 < theta0 <= pi/2" : "threshold angle outside (0, pi/2]");

  const auto pair = chains(inst, standard_ell(inst));
  const Distribution pibar = Distribution::uniform_unmarked(size, inst.marked);
  const Spectrum spec = eigendecompose(Discriminant(pair.interpolated));
  const Matrix dv = Discriminant(pair.lazy).entries() * spec.eigenvectors();
  const Vector alpha = spec.eigenvectors().transpose() * pibar.sqrt();

  // Split-sum norms at time t; the unit direction contributes nothing.
  auto partial = [&](std::size_t t) {
    double small = 0.0;
    double large = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
      const double lambda = spec.eigenvalues()(idx(k));
      if (std::abs(lambda - 1.0) < kUnitEigenvalueTolerance) continue;
      const double theta = spec.angles()(idx(k));
      const double mu = spec.eigenvectors().col(idx(k)).dot(dv.col(idx(k)));
      const double theta_hat = std::acos(std::clamp(mu, -1.0, 1.0));
      const double gap = 2.0 * std::sin(static_cast<double>(t) * (theta - theta_hat) / 2.0);
      const double term = alpha(idx(k)) * alpha(idx(k)) * gap * gap;
      (theta <= theta0 ? small : large) += term;
    }
    return std::pair{std::sqrt(small), std::sqrt(large)};
  };

  const double bound2 = 2.0 / std::sqrt((1.0 - cos0) * (n - 1.0));
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t t : samples) {
    const auto [small, large] = partial(t);
    const double bound1 = 8.0 * static_cast<double>(t) / (n - 1.0) * std::sin(theta0 / 2.0);
    excess = std::max({excess, small - bound1, large - bound2});
    const std::string tag = "[t=" + std::to_string(t) + "]";
    r.metrics.emplace_back("small" + tag, small);
    r.metrics.emplace_back("bound_small" + tag, bound1);
    r.metrics.emplace_back("large" + tag, large);
    r.metrics.emplace_back("bound_large" + tag, bound2);
  }
  r.metrics.emplace_back("hitting_time", ht);
  r.metrics.emplace_back("theta0", theta0);

  // Same quantity from the walks themselves: ||R1 U^t init - U_lazy^t init||.
  const SzegedyWalk plain(pair.interpolated);
  const SzegedyWalk lazy(pair.lazy);
  if (small_enough_to_lift(size, lazy.dimension())) {
    const InterpolationIsometries iso(plain, lazy, spec);
    EdgeState psi = plain.initial_state(pibar);
    EdgeState phi = lazy.initial_state(pibar);
    double consistency = 0.0;
    std::size_t t = 0;
    for (std::size_t target : samples) {
      for (; t < target; ++t) {
        plain.step(psi);
        lazy.step(phi);
      }
      const auto image = iso.apply_r1(psi);
      const double direct = (image.state.amplitudes() - phi.amplitudes()).norm();
      const auto [small, large] = partial(target);
      consistency = std::max(consistency, std::abs(direct - std::hypot(small, large)));
    }
    r.metrics.emplace_back("split_consistency", consistency);
  }

  r.lhs = excess;
  r.residual = excess;
  r.settle();
  r.runtime_seconds = seconds_since(start);
  return r;
}

SearchCurve search_experiment(const MarkedInstance& inst, const CoinConfig& cfg, std::optional<std::size_t> t_max) {
  SearchCurve curve;
  curve.hitting_time = classical_hitting_time(inst);
  const std::size_t steps = t_max.value_or(static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(curve.hitting_time))));
  const LackadaisicalWalk walk(inst, cfg);
  CoinState state = walk.initial_state();
  curve.success.reserve(steps + 1);
  curve.norm.reserve(steps + 1);
  for (std::size_t t = 0;; ++t) {
    const double p = walk.success_probability(state);
    curve.success.push_back(p);
    curve.norm.push_back(state.norm());
    if (p > curve.max || t == 0) {
      curve.max = p;
      curve.argmax = t;
    }
    if (!curve.first_half && p >= 0.5) curve.first_half = t;
    if (t == steps) break;
    walk.step(state);
  }
  return curve;
}

}  // namespace lackawalk
