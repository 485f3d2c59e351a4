#pragma once

#include <cstddef>
#include <span>

#include "lackawalk/graph.hpp"
#include "lackawalk/linalg.hpp"

namespace lackawalk {

/// Self-loop weight and the weighted diffusion coin
/// |c> = (|e_1> + ... + |e_d> + sqrt(ell)|loop>) / sqrt(d + ell).
struct CoinConfig {
  double ell = 0.0;
  Vector coin;

  CoinConfig(std::size_t degree, double ell);
  /// ell = d / N.
  static CoinConfig standard(const MarkedInstance& inst);

  std::size_t degree() const noexcept { return static_cast<std::size_t>(coin.size()) - 1; }
};

/// Amplitudes over the N(d+1) basis states |x, slot>, slot d being the self-loop.
class CoinState {
 public:
  CoinState(std::size_t n_vertices, std::size_t degree);

  std::size_t n_vertices() const noexcept { return n_; }
  std::size_t degree() const noexcept { return d_; }
  std::size_t dimension() const noexcept { return n_ * (d_ + 1); }
  std::size_t loop_slot() const noexcept { return d_; }
  std::size_t index(Vertex x, std::size_t slot) const noexcept { return x * (d_ + 1) + slot; }

  Complex& operator()(Vertex x, std::size_t slot) { return amp_(static_cast<Eigen::Index>(index(x, slot))); }
  Complex operator()(Vertex x, std::size_t slot) const {
    return amp_(static_cast<Eigen::Index>(index(x, slot)));
  }

  ComplexVector& amplitudes() noexcept { return amp_; }
  const ComplexVector& amplitudes() const noexcept { return amp_; }
  std::span<const Complex> view() const noexcept { return {amp_.data(), static_cast<std::size_t>(amp_.size())}; }

  auto block(Vertex x) { return amp_.segment(static_cast<Eigen::Index>(x * (d_ + 1)), static_cast<Eigen::Index>(d_ + 1)); }
  auto block(Vertex x) const {
    return amp_.segment(static_cast<Eigen::Index>(x * (d_ + 1)), static_cast<Eigen::Index>(d_ + 1));
  }

  double norm() const { return amp_.norm(); }

 private:
  friend class LackadaisicalWalk;
  std::size_t n_;
  std::size_t d_;
  ComplexVector amp_;
  ComplexVector spare_;  // permutation buffer for the shift
};

/// Lackadaisical quantum walk on a marked regular graph. All operators are
/// applied in place in O(dN) time.
///
/// step() applies L = S (I x C) G: oracle, then coin, then flip-flop shift.
/// step_symmetric_oracle() applies the same walk with the oracle that only
/// reflects span{|m,+>, |m,loop>}, where |+> is the uniform superposition of
/// the d arc slots.
class LackadaisicalWalk {
 public:
  LackadaisicalWalk(MarkedInstance inst, CoinConfig cfg);

  const MarkedInstance& instance() const noexcept { return inst_; }
  const CoinConfig& config() const noexcept { return cfg_; }
  std::size_t dimension() const noexcept { return inst_.size() * (inst_.degree() + 1); }

  /// Uniform superposition of |x>|c> over unmarked x.
  CoinState initial_state() const;
  CoinState zero_state() const { return CoinState(inst_.size(), inst_.degree()); }

  void apply_coin(CoinState& state) const;
  void apply_shift(CoinState& state) const;
  void apply_oracle(CoinState& state) const;
  void apply_symmetric_oracle(CoinState& state) const;

  void step(CoinState& state) const;
  void step_symmetric_oracle(CoinState& state) const;

  double success_probability(const CoinState& state) const;

 private:
  void check(const CoinState& state) const;

  MarkedInstance inst_;
  CoinConfig cfg_;
};

/// Total probability on the d+1 slots of the marked vertex.
double success_probability(const CoinState& state, Vertex marked);

inline bool verify_marked_arc_symmetry(const CoinState& state, const MarkedInstance& inst, double tol) {
  return verify_marked_arc_symmetry(state.view(), inst, tol);
}

}  // namespace lackawalk
