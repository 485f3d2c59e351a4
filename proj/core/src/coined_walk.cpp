#include "lackawalk/coined_walk.hpp"

#include <cmath>
#include <stdexcept>

namespace lackawalk {

CoinConfig::CoinConfig(std::size_t degree, double ell_) : ell(ell_) {
  if (degree == 0) throw std::invalid_argument("CoinConfig: degree must be positive");
  if (!(ell >= 0.0)) throw std::invalid_argument("CoinConfig: ell must be >= 0");
  const double norm = std::sqrt(static_cast<double>(degree) + ell);
  coin = Vector::Constant(static_cast<Eigen::Index>(degree + 1), 1.0 / norm);
  coin(static_cast<Eigen::Index>(degree)) = std::sqrt(ell) / norm;
}

CoinConfig CoinConfig::standard(const MarkedInstance& inst) {
  return CoinConfig(inst.degree(), static_cast<double>(inst.degree()) / static_cast<double>(inst.size()));
}

CoinState::CoinState(std::size_t n_vertices, std::size_t degree)
    : n_(n_vertices),
      d_(degree),
      amp_(ComplexVector::Zero(static_cast<Eigen::Index>(n_vertices * (degree + 1)))),
      spare_(amp_.size()) {}

LackadaisicalWalk::LackadaisicalWalk(MarkedInstance inst, CoinConfig cfg)
    : inst_(std::move(inst)), cfg_(std::move(cfg)) {
  if (cfg_.degree() != inst_.degree())
    throw std::invalid_argument("LackadaisicalWalk: coin built for degree " +
                                std::to_string(cfg_.degree()) + " on a degree-" +
                                std::to_string(inst_.degree()) + " graph");
}

void LackadaisicalWalk::check(const CoinState& state) const {
  if (state.n_vertices() != inst_.size() || state.degree() != inst_.degree())
    throw std::invalid_argument("LackadaisicalWalk: state dimension does not match the graph");
}

CoinState LackadaisicalWalk::initial_state() const {
  const std::size_t n = inst_.size();
  if (n < 2) throw std::invalid_argument("initial_state: need N >= 2");
  CoinState state = zero_state();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n - 1));
  for (Vertex x = 0; x < n; ++x)
    if (x != inst_.marked) state.block(x) = (amp * cfg_.coin).cast<Complex>();
  return state;
}

void LackadaisicalWalk::apply_coin(CoinState& state) const {
  check(state);
  const double* c = cfg_.coin.data();
  const std::size_t width = inst_.degree() + 1;
  Complex* amp = state.amp_.data();
  for (Vertex x = 0; x < inst_.size(); ++x) {
    Complex* b = amp + x * width;
    Complex along = 0.0;
    for (std::size_t i = 0; i < width; ++i) along += c[i] * b[i];
    along *= 2.0;
    for (std::size_t i = 0; i < width; ++i) b[i] = along * c[i] - b[i];
  }
}

void LackadaisicalWalk::apply_shift(CoinState& state) const {
  check(state);
  const auto& g = *inst_.graph;
  const std::size_t d = g.degree();
  auto& src = state.amp_;
  auto& dst = state.spare_;
  for (Vertex x = 0; x < g.size(); ++x) {
    for (std::size_t i = 0; i < d; ++i)
      dst(static_cast<Eigen::Index>(state.index(g.neighbor(x, i), g.reverse_index(x, i)))) =
          src(static_cast<Eigen::Index>(state.index(x, i)));
    dst(static_cast<Eigen::Index>(state.index(x, d))) = src(static_cast<Eigen::Index>(state.index(x, d)));
  }
  src.swap(dst);
}

void LackadaisicalWalk::apply_oracle(CoinState& state) const {
  check(state);
  state.block(inst_.marked) *= -1.0;
}

void LackadaisicalWalk::apply_symmetric_oracle(CoinState& state) const {
  check(state);
  const std::size_t d = inst_.degree();
  auto b = state.block(inst_.marked);
  // I - 2|+><+| on the arc slots, then negate the loop slot.
  const Complex mean = b.head(static_cast<Eigen::Index>(d)).sum() / static_cast<double>(d);
  b.head(static_cast<Eigen::Index>(d)).array() -= 2.0 * mean;
  b(static_cast<Eigen::Index>(d)) = -b(static_cast<Eigen::Index>(d));
}

void LackadaisicalWalk::step(CoinState& state) const {
  apply_oracle(state);
  apply_coin(state);
  apply_shift(state);
}

void LackadaisicalWalk::step_symmetric_oracle(CoinState& state) const {
  apply_symmetric_oracle(state);
  apply_coin(state);
  apply_shift(state);
}

double LackadaisicalWalk::success_probability(const CoinState& state) const {
  check(state);
  return lackawalk::success_probability(state, inst_.marked);
}

double success_probability(const CoinState& state, Vertex marked) {
  if (marked >= state.n_vertices()) throw std::out_of_range("success_probability: vertex out of range");
  return state.block(marked).squaredNorm();
}

}  // namespace lackawalk
