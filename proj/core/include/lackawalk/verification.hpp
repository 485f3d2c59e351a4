#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lackawalk/coined_walk.hpp"
#include "lackawalk/graph.hpp"

namespace lackawalk {

/// Outcome of one numerical check. pass == (residual <= tolerance); a NaN
/// residual never passes.
struct ClaimReport {
  std::string claim;
  std::string instance;
  bool hypothesis_met = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
  std::string notes;

  void settle() { pass = residual <= tolerance; }
  std::optional<double> metric(const std::string& key) const;
};

/// Whether the graph is locally arc-transitive, decided by automorphism
/// search up to kDefaultBruteForceLimit vertices and by the family
/// certificate above it. Undecidable graphs count as unmet.
struct Hypothesis {
  bool met = false;
  std::string note;
};
Hypothesis arc_transitive_hypothesis(const RegularGraph& g);

/// Classical hitting time of the simple random walk from pi-bar.
double classical_hitting_time(const MarkedInstance& inst);

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kConjugationTolerance = 1e-11;
inline constexpr double kEigenvectorTolerance = 1e-10;
inline constexpr double kDecaySlopeThreshold = -0.20;
inline constexpr double kBoundSlack = 1e-12;

/// C(U(P_lazy(s)), init)^2 against (N+1)/N C(U(P(s)), init)^2 + 1/(2N-1),
/// both from discriminant spectra. Requires ell = d/N.
ClaimReport check_theorem1(const MarkedInstance& inst, const CoinConfig& cfg);

/// max_t ||L^t init - L_sym^t init|| over t <= t_max (default floor(2 sqrt(HT))).
ClaimReport check_lemma1(const MarkedInstance& inst, const CoinConfig& cfg,
                         std::optional<std::size_t> t_max = std::nullopt);

/// max ||L_sym psi - E U_lazy E^dagger psi|| over random unit coin states.
ClaimReport check_lemma2(const MarkedInstance& inst, const CoinConfig& cfg, std::size_t n_random,
                         std::uint64_t seed = 1);

/// Shared eigenvectors of the two discriminants, the eigenvalue map
/// lambda -> (N lambda + 1)/(N + 1), and the squared cotangent relation.
ClaimReport check_lemma3(const MarkedInstance& inst);

/// Fits log(max_{t <= floor(c sqrt(HT))} total distance) against log N over
/// the instances, each with ell = d/N. Passes when the slope is at most -0.20.
ClaimReport check_theorem2(std::span<const MarkedInstance> instances, double c, std::size_t jobs = 1);

/// Small- and large-angle partial sums of the eigen-expansion of the
/// difference between the two interpolated walks, against their bounds, at
/// each sampled t (default {0, floor(sqrt(HT)/2), floor(sqrt(HT)), floor(2 sqrt(HT))}).
/// Residual is the largest excess of a partial sum over its bound.
ClaimReport check_facts(const MarkedInstance& inst, std::span<const std::size_t> t_samples = {});

std::vector<std::size_t> default_fact_samples(double hitting_time);

struct SearchCurve {
  std::vector<double> success;  // index t
  std::vector<double> norm;
  std::size_t argmax = 0;
  double max = 0.0;
  std::optional<std::size_t> first_half;  // first t with success >= 0.5
  double hitting_time = 0.0;
};

/// Success probability of L^t init for t = 0..t_max (default ceil(2 sqrt(HT))).
SearchCurve search_experiment(const MarkedInstance& inst, const CoinConfig& cfg,
                              std::optional<std::size_t> t_max = std::nullopt);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lackawalk
