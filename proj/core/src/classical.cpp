#include "lackawalk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace lackawalk {

namespace {

void require_vertex(std::size_t n, Vertex m, const char* where) {
  if (m >= n)
    throw std::out_of_range(std::string(where) + ": vertex " + std::to_string(m) +
                            " out of range for N=" + std::to_string(n));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_string(WalkRole role) {
  switch (role) {
    case WalkRole::plain: return "plain";
    case WalkRole::absorbing: return "absorbing";
    case WalkRole::interpolated: return "interpolated";
    case WalkRole::lazy: return "lazy";
    case WalkRole::lazy_interpolated: return "lazy_interpolated";
  }
  return "unknown";
}

StochasticMatrix::StochasticMatrix(Matrix entries, WalkRole role, double s, double ell,
                                   std::optional<Vertex> marked)
    : entries_(std::move(entries)), role_(role), s_(s), ell_(ell), marked_(marked) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw std::invalid_argument("StochasticMatrix: entries must be a non-empty square matrix");
  if ((entries_.array() < 0.0).any())
    throw std::invalid_argument("StochasticMatrix: negative entry");
  for (Eigen::Index x = 0; x < entries_.rows(); ++x) {
    const double sum = entries_.row(x).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw std::invalid_argument("StochasticMatrix: row " + std::to_string(x) + " sums to " +
                                  std::to_string(sum));
  }
  if (role_ == WalkRole::absorbing && marked_) {
    for (Eigen::Index y = 0; y < entries_.cols(); ++y)
      if (entries_(*marked_, y) != (static_cast<Vertex>(y) == *marked_ ? 1.0 : 0.0))
        throw std::invalid_argument("StochasticMatrix: absorbing row is not an indicator");
  }
}

Distribution::Distribution(Vector probs) : probs_(std::move(probs)) {
  if (probs_.size() == 0) throw std::invalid_argument("Distribution: empty");
  if ((probs_.array() < 0.0).any()) throw std::invalid_argument("Distribution: negative mass");
  if (std::abs(probs_.sum() - 1.0) > kSumTolerance)
    throw std::invalid_argument("Distribution: total mass " + std::to_string(probs_.sum()));
}

Distribution Distribution::uniform(std::size_t n) {
  return Distribution(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

Distribution Distribution::uniform_unmarked(std::size_t n, Vertex marked) {
  if (n < 2) throw std::invalid_argument("uniform_unmarked: need N >= 2");
  require_vertex(n, marked, "uniform_unmarked");
  Vector p = Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n - 1));
  p(marked) = 0.0;
  return Distribution(std::move(p));
}

StochasticMatrix walk_matrix(const RegularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const double w = 1.0 / static_cast<double>(g.degree());
  Matrix p = Matrix::Zero(n, n);
  for (Vertex x = 0; x < g.size(); ++x)
    for (auto y : g.neighbors(x)) p(x, y) = w;
  return StochasticMatrix(std::move(p), WalkRole::plain);
}

StochasticMatrix absorbing_matrix(const StochasticMatrix& p, Vertex m) {
  if (p.role() != WalkRole::plain && p.role() != WalkRole::lazy)
    throw std::invalid_argument("absorbing_matrix: source must be a plain or lazy walk");
  require_vertex(p.size(), m, "absorbing_matrix");
  Matrix a = p.entries();
  a.row(m).setZero();
  a(m, m) = 1.0;
  return StochasticMatrix(std::move(a), WalkRole::absorbing, 1.0, p.ell(), m);
}

StochasticMatrix interpolated_matrix(const StochasticMatrix& p, Vertex m, double s) {
  if (p.role() != WalkRole::plain && p.role() != WalkRole::lazy)
    throw std::invalid_argument("interpolated_matrix: source must be a plain or lazy walk");
  if (!(s >= 0.0 && s <= 1.0))
    throw std::invalid_argument("interpolated_matrix: s=" + std::to_string(s) + " outside [0,1]");
  require_vertex(p.size(), m, "interpolated_matrix");
  Matrix a = p.entries();
  for (Eigen::Index y = 0; y < a.cols(); ++y)
    a(m, y) = (1.0 - s) * p(m, y) + s * (static_cast<Vertex>(y) == m ? 1.0 : 0.0);
  const auto role = p.role() == WalkRole::lazy ? WalkRole::lazy_interpolated : WalkRole::interpolated;
  return StochasticMatrix(std::move(a), role, s, p.ell(), m);
}

StochasticMatrix lazy_matrix(const RegularGraph& g, double ell) {
  if (!(ell >= 0.0)) throw std::invalid_argument("lazy_matrix: ell must be >= 0");
  const double d = static_cast<double>(g.degree());
  const double step = 1.0 / (d + ell);
  const double stay = ell / (d + ell);
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix p = Matrix::Zero(n, n);
  for (Vertex x = 0; x < g.size(); ++x) {
    for (auto y : g.neighbors(x)) p(x, y) = step;
    p(x, x) = stay;
  }
  return StochasticMatrix(std::move(p), WalkRole::lazy, 0.0, ell);
}

StochasticMatrix lazy_interpolated_matrix(const RegularGraph& g, Vertex m, double ell, double s) {
  return interpolated_matrix(lazy_matrix(g, ell), m, s);
}

Distribution stationary_distribution(const StochasticMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  Matrix a = p.entries().transpose() - Matrix::Identity(n, n);
  a.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b(n - 1) = 1.0;
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw SingularSystemError("stationary_distribution: chain is reducible");
  Vector pi = lu.solve(b);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  return Distribution(std::move(pi));
}

double hitting_time_exact(const StochasticMatrix& p, Vertex m, const std::optional<Distribution>& start) {
  const std::size_t n = p.size();
  require_vertex(n, m, "hitting_time_exact");
  if (n < 2) throw std::invalid_argument("hitting_time_exact: need N >= 2");
  const Distribution init = start ? *start : Distribution::uniform_unmarked(n, m);
  if (init.size() != n) throw std::invalid_argument("hitting_time_exact: start has wrong size");

  std::vector<Vertex> unmarked;
  for (Vertex x = 0; x < n; ++x)
    if (x != m) unmarked.push_back(x);
  const auto k = static_cast<Eigen::Index>(unmarked.size());
  Matrix a(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) - p(unmarked[i], unmarked[j]);

  Eigen::FullPivLU<Matrix> lu(a);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible())
    throw SingularSystemError("hitting_time_exact: I - Q is singular; marked vertex " +
                              std::to_string(m) + " is unreachable from part of the chain");
  const Vector h = lu.solve(Vector::Ones(k));
  double ht = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) ht += init[unmarked[i]] * h(i);
  return ht;
}

MonteCarloEstimate hitting_time_monte_carlo(const StochasticMatrix& p, Vertex m,
                                            const std::optional<Distribution>& start,
                                            std::size_t n_trials, std::uint64_t seed,
                                            std::size_t threads) {
  const std::size_t n = p.size();
  require_vertex(n, m, "hitting_time_monte_carlo");
  if (n_trials < 1) throw std::invalid_argument("hitting_time_monte_carlo: need n_trials >= 1");
  const Distribution init = start ? *start : Distribution::uniform_unmarked(n, m);

  // Cumulative rows for inverse-CDF sampling.
  std::vector<std::vector<double>> cdf(n, std::vector<double>(n));
  for (Vertex x = 0; x < n; ++x) {
    double acc = 0.0;
    for (Vertex y = 0; y < n; ++y) cdf[x][y] = (acc += p(x, y));
    cdf[x][n - 1] = 1.0;
  }
  std::vector<double> start_cdf(n);
  {
    double acc = 0.0;
    for (Vertex x = 0; x < n; ++x) start_cdf[x] = (acc += init[x]);
    start_cdf[n - 1] = 1.0;
  }
  auto draw = [](const std::vector<double>& c, double u) {
    return static_cast<Vertex>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
  };

  const std::size_t cap = 100 * n * n;
  std::vector<std::size_t> steps(n_trials);
  std::vector<char> truncated(n_trials, 0);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t trial = begin; trial < end; ++trial) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(trial)));
      Vertex x = std::min(draw(start_cdf, unit(rng)), n - 1);
      std::size_t t = 0;
      while (x != m && t < cap) {
        x = std::min(draw(cdf[x], unit(rng)), n - 1);
        ++t;
      }
      steps[trial] = t;
      truncated[trial] = x != m;
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, n_trials);
  if (threads == 1) {
    run_range(0, n_trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_trials + threads - 1) / threads;
    for (std::size_t w = 0; w < threads; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(n_trials, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
  }

  MonteCarloEstimate est;
  est.n_trials = n_trials;
  est.step_cap = cap;
  double sum = 0.0;
  for (std::size_t i = 0; i < n_trials; ++i) {
    sum += static_cast<double>(steps[i]);
    est.truncated += truncated[i] ? 1 : 0;
  }
  est.mean = sum / static_cast<double>(n_trials);
  double sq = 0.0;
  for (auto s : steps) {
    const double dev = static_cast<double>(s) - est.mean;
    sq += dev * dev;
  }
  const double var = n_trials > 1 ? sq / static_cast<double>(n_trials - 1) : 0.0;
  est.std_error = std::sqrt(var / static_cast<double>(n_trials));
  return est;
}

}  // namespace lackawalk
