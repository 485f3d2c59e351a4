#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "lackawalk/graph.hpp"
#include "lackawalk/linalg.hpp"

namespace lackawalk {

enum class WalkRole { plain, absorbing, interpolated, lazy, lazy_interpolated };

std::string to_string(WalkRole role);

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-stochastic matrix tagged with how it was built.
class StochasticMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-12;

  /// Throws std::invalid_argument on negative entries or a row sum off by
  /// more than kRowSumTolerance.
  StochasticMatrix(Matrix entries, WalkRole role, double s = 0.0, double ell = 0.0,
                   std::optional<Vertex> marked = std::nullopt);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(Vertex x, Vertex y) const { return entries_(x, y); }
  const Matrix& entries() const noexcept { return entries_; }
  WalkRole role() const noexcept { return role_; }
  double s() const noexcept { return s_; }
  double ell() const noexcept { return ell_; }
  std::optional<Vertex> marked() const noexcept { return marked_; }

 private:
  Matrix entries_;
  WalkRole role_;
  double s_;
  double ell_;
  std::optional<Vertex> marked_;
};

/// Probability vector over vertices.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Distribution(Vector probs);

  static Distribution uniform(std::size_t n);
  /// Uniform over every vertex except `marked` (the start distribution pi-bar).
  static Distribution uniform_unmarked(std::size_t n, Vertex marked);

  std::size_t size() const noexcept { return static_cast<std::size_t>(probs_.size()); }
  const Vector& probs() const noexcept { return probs_; }
  double operator[](Vertex x) const { return probs_(x); }
  /// Entrywise square root, a unit vector in the 2-norm.
  Vector sqrt() const { return probs_.cwiseSqrt(); }

 private:
  Vector probs_;
};

StochasticMatrix walk_matrix(const RegularGraph& g);
StochasticMatrix absorbing_matrix(const StochasticMatrix& p, Vertex m);
/// (1-s) P + s P' where P' absorbs at m; only row m changes.
StochasticMatrix interpolated_matrix(const StochasticMatrix& p, Vertex m, double s);
/// d/(d+ell) P + ell/(d+ell) I.
StochasticMatrix lazy_matrix(const RegularGraph& g, double ell);
StochasticMatrix lazy_interpolated_matrix(const RegularGraph& g, Vertex m, double ell, double s);

/// Solves pi P = pi for an irreducible chain.
Distribution stationary_distribution(const StochasticMatrix& p);

/// Expected steps to reach m, by solving (I - Q) h = 1 on the unmarked
/// vertices and averaging h under `start` (default pi-bar). Start mass on m
/// counts as zero steps.
double hitting_time_exact(const StochasticMatrix& p, Vertex m,
                          const std::optional<Distribution>& start = std::nullopt);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_trials = 0;
  /// Trajectories stopped at the step cap before reaching m (counted at the cap).
  std::size_t truncated = 0;
  std::size_t step_cap = 0;
};

/// Mean absorption step count over independent trajectories. Trial i draws
/// from its own generator seeded from (seed, i), so the result does not
/// depend on `threads`. Trajectories are capped at 100 N^2 steps.
MonteCarloEstimate hitting_time_monte_carlo(const StochasticMatrix& p, Vertex m,
                                            const std::optional<Distribution>& start,
                                            std::size_t n_trials, std::uint64_t seed,
                                            std::size_t threads = 1);

}  // namespace lackawalk
