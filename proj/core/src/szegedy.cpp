#include "lackawalk/szegedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lackawalk {

namespace {

constexpr double kParallelTolerance = 1e-12;

bool at_pole(double lambda) {
  return std::abs(lambda - 1.0) < kUnitEigenvalueTolerance || std::abs(lambda + 1.0) < kUnitEigenvalueTolerance;
}

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

// T v for a real v, and SWAP of a lifted vector, as plain vectors over the support.
Vector lift_real(const EdgeSpace& space, const Vector& v) {
  Vector a(idx(space.size()));
  for (std::size_t k = 0; k < space.size(); ++k) a(idx(k)) = space.weight(k) * v(idx(space.row(k)));
  return a;
}

Vector swap_real(const EdgeSpace& space, const Vector& a) {
  Vector b(a.size());
  for (std::size_t k = 0; k < space.size(); ++k) b(idx(space.swap_partner(k))) = a(idx(k));
  return b;
}

}  // namespace

EdgeSpace::EdgeSpace(const StochasticMatrix& m) {
  const std::size_t n = m.size();
  offsets_.assign(1, 0);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (m(x, y) > 0.0 || m(y, x) > 0.0) {
        rows_.push_back(x);
        cols_.push_back(y);
        weights_.push_back(std::sqrt(m(x, y)));
      }
    }
    offsets_.push_back(cols_.size());
  }
  partner_.resize(cols_.size());
  for (std::size_t k = 0; k < cols_.size(); ++k) partner_[k] = *find(cols_[k], rows_[k]);
}

std::optional<std::size_t> EdgeSpace::find(Vertex x, Vertex y) const {
  if (x >= n_vertices()) return std::nullopt;
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]);
  const auto it = std::lower_bound(first, last, y);
  if (it == last || *it != y) return std::nullopt;
  return static_cast<std::size_t>(it - cols_.begin());
}

EdgeState::EdgeState(std::shared_ptr<const EdgeSpace> space)
    : space_(std::move(space)), amp_(ComplexVector::Zero(idx(space_->size()))), spare_(amp_.size()) {}

EdgeState::EdgeState(std::shared_ptr<const EdgeSpace> space, ComplexVector amplitudes)
    : space_(std::move(space)), amp_(std::move(amplitudes)), spare_(amp_.size()) {
  if (static_cast<std::size_t>(amp_.size()) != space_->size())
    throw std::invalid_argument("EdgeState: amplitude vector does not match the edge space");
}

Complex EdgeState::at(Vertex x, Vertex y) const {
  const auto k = space_->find(x, y);
  return k ? amp_(idx(*k)) : Complex{};
}

SzegedyWalk::SzegedyWalk(StochasticMatrix m)
    : chain_(std::move(m)), space_(std::make_shared<const EdgeSpace>(chain_)) {}

void SzegedyWalk::check(const EdgeState& psi) const {
  if (psi.shared_space() != space_ && psi.space().size() != space_->size())
    throw std::invalid_argument("SzegedyWalk: state lives on a different edge space");
}

EdgeState SzegedyWalk::apply_t(const ComplexVector& v) const {
  if (static_cast<std::size_t>(v.size()) != chain_.size())
    throw std::invalid_argument("apply_t: vector size does not match the chain");
  EdgeState out(space_);
  for (std::size_t k = 0; k < space_->size(); ++k)
    out.amp_(idx(k)) = space_->weight(k) * v(idx(space_->row(k)));
  return out;
}

ComplexVector SzegedyWalk::apply_t_adjoint(const EdgeState& psi) const {
  check(psi);
  ComplexVector out = ComplexVector::Zero(idx(chain_.size()));
  for (std::size_t k = 0; k < space_->size(); ++k)
    out(idx(space_->row(k))) += space_->weight(k) * psi.amp_(idx(k));
  return out;
}

void SzegedyWalk::apply_reflection(EdgeState& psi) const {
  check(psi);
  const EdgeSpace& sp = *space_;
  Complex* amp = psi.amp_.data();
  for (Vertex x = 0; x < sp.n_vertices(); ++x) {
    Complex along = 0.0;
    for (std::size_t k = sp.row_begin(x); k < sp.row_end(x); ++k) along += sp.weight(k) * amp[k];
    along *= 2.0;
    for (std::size_t k = sp.row_begin(x); k < sp.row_end(x); ++k) amp[k] = along * sp.weight(k) - amp[k];
  }
}

void SzegedyWalk::apply_swap(EdgeState& psi) const {
  check(psi);
  for (std::size_t k = 0; k < space_->size(); ++k) psi.spare_(idx(space_->swap_partner(k))) = psi.amp_(idx(k));
  psi.amp_.swap(psi.spare_);
}

void SzegedyWalk::step(EdgeState& psi) const {
  apply_reflection(psi);
  apply_swap(psi);
}

std::vector<SzegedyEigenpair> lift_eigenpairs(const Spectrum& spec, const SzegedyWalk& walk) {
  if (spec.size() != walk.chain().size())
    throw std::invalid_argument("lift_eigenpairs: spectrum size does not match the chain");
  const EdgeSpace& space = *walk.space();
  const Complex i{0.0, 1.0};
  std::vector<SzegedyEigenpair> out;
  out.reserve(2 * spec.size());

  auto finish = [&](SzegedyEigenpair pair) {
    EdgeState moved = pair.vector;
    walk.step(moved);
    pair.residual = (moved.amplitudes() - pair.eigenvalue * pair.vector.amplitudes()).norm();
    out.push_back(std::move(pair));
  };

  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double lambda = spec.eigenvalues()(idx(k));
    const double theta = spec.angles()(idx(k));
    const Vector a = lift_real(space, spec.eigenvectors().col(idx(k)));
    if (at_pole(lambda)) {
      const double phase = lambda > 0.0 ? 0.0 : M_PI;
      finish({phase, std::polar(1.0, phase), 0, k, EdgeState(walk.space(), a.cast<Complex>()), 0.0});
      continue;
    }
    // Gram-Schmidt of SWAP a against a; <a, SWAP a> equals lambda for a true eigenvector.
    const Vector b = swap_real(space, a);
    Vector perp = a.dot(b) * a - b;
    const double len = perp.norm();
    if (len < kParallelTolerance)
      throw SpectralError("lift_eigenpairs: SWAP T|lambda> is parallel to T|lambda> at lambda = " +
                          std::to_string(lambda) + ", away from theta in {0, pi}");
    perp /= len;
    const ComplexVector plus = (a.cast<Complex>() + i * perp.cast<Complex>()) / std::sqrt(2.0);
    const ComplexVector minus = (a.cast<Complex>() - i * perp.cast<Complex>()) / std::sqrt(2.0);
    finish({theta, std::polar(1.0, theta), +1, k, EdgeState(walk.space(), plus), 0.0});
    finish({-theta, std::polar(1.0, -theta), -1, k, EdgeState(walk.space(), minus), 0.0});
  }
  return out;
}

double cotangent_qht_direct(std::span<const SzegedyEigenpair> pairs, const EdgeState& w) {
  double sum = 0.0;
  for (const auto& p : pairs) {
    if (p.vector.space().size() != w.space().size())
      throw std::invalid_argument("cotangent_qht_direct: eigenvector and state live on different spaces");
    const double c = std::cos(p.theta);
    if (std::abs(1.0 - c) < kUnitEigenvalueTolerance) continue;
    sum += std::norm(p.vector.amplitudes().dot(w.amplitudes())) * (1.0 + c) / (1.0 - c);
  }
  return std::sqrt(sum);
}

TransportedSpectrum transport_spectrum(const Spectrum& base, const Discriminant& other) {
  if (base.size() != other.size())
    throw std::invalid_argument("transport_spectrum: sizes differ");
  const Matrix& v = base.eigenvectors();
  const Matrix dv = other.entries() * v;
  const auto n = idx(base.size());
  Vector mu(n);
  double residual = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    mu(k) = v.col(k).dot(dv.col(k));
    residual = std::max(residual, (dv.col(k) - mu(k) * v.col(k)).norm());
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Roundoff can flip the Rayleigh quotients inside a degenerate eigenspace;
  // only re-sort when the order is wrong by more than that.
  bool ordered = true;
  for (Eigen::Index k = 1; k < n; ++k) ordered = ordered && mu(k) > mu(k - 1) - kDegeneracyTolerance;
  if (!ordered)
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return mu(a) < mu(b); });
  SymmetricEigen eig{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    eig.values(k) = mu(src);
    eig.vectors.col(k) = v.col(src);
  }
  return {Spectrum(std::move(eig)), residual};
}

namespace {

struct Placement {
  std::size_t slot;
  double sign;
};

Placement place(Vertex x, Vertex y, const MarkedInstance& inst) {
  if (x == y) return {inst.degree(), x == inst.marked ? -1.0 : 1.0};
  const auto slot = inst.graph->slot_of(x, y);
  if (!slot)
    throw std::invalid_argument("isometry_e: pair (" + std::to_string(x) + ", " + std::to_string(y) +
                                ") is neither an arc nor a self-loop");
  return {*slot, 1.0};
}

}  // namespace

CoinState isometry_e(const EdgeState& psi, const MarkedInstance& inst) {
  const EdgeSpace& space = psi.space();
  if (space.n_vertices() != inst.size())
    throw std::invalid_argument("isometry_e: edge space and graph differ in size");
  CoinState out(inst.size(), inst.degree());
  for (std::size_t k = 0; k < space.size(); ++k) {
    const auto p = place(space.row(k), space.column(k), inst);
    out(space.row(k), p.slot) = p.sign * psi.amplitudes()(idx(k));
  }
  return out;
}

EdgeState isometry_e_adjoint(const CoinState& state, std::shared_ptr<const EdgeSpace> space,
                             const MarkedInstance& inst) {
  if (space->n_vertices() != inst.size() || state.n_vertices() != inst.size() || state.degree() != inst.degree())
    throw std::invalid_argument("isometry_e_adjoint: dimensions do not match the graph");
  EdgeState out(space);
  for (std::size_t k = 0; k < space->size(); ++k) {
    const auto p = place(space->row(k), space->column(k), inst);
    out.amplitudes()(idx(k)) = p.sign * state(space->row(k), p.slot);
  }
  return out;
}

InterpolationIsometries::InterpolationIsometries(const SzegedyWalk& plain, const SzegedyWalk& lazy,
                                                 const Spectrum& plain_spectrum)
    : plain_space_(plain.space()), lazy_space_(lazy.space()) {
  const std::size_t n = plain_spectrum.size();
  if (n != plain.chain().size() || n != lazy.chain().size())
    throw std::invalid_argument("InterpolationIsometries: chain sizes differ");
  // Same eigenvector order on both sides; eigenvalues re-measured on the lazy chain.
  const Matrix& v = plain_spectrum.eigenvectors();
  const Matrix lazy_dv = Discriminant(lazy.chain()).entries() * v;

  std::vector<Vector> plain_cols;
  std::vector<Vector> lazy_cols;
  std::vector<Vector> plain_perps;
  std::vector<Vector> lazy_perps;
  for (std::size_t k = 0; k < n; ++k) {
    const Vector vk = v.col(idx(k));
    const double lambda = plain_spectrum.eigenvalues()(idx(k));
    const double mu = vk.dot(lazy_dv.col(idx(k)));
    Vector a = lift_real(*plain_space_, vk);
    Vector b = lift_real(*lazy_space_, vk);
    if (!at_pole(lambda) && !at_pole(mu)) {
      const Vector sa = swap_real(*plain_space_, a);
      const Vector sb = swap_real(*lazy_space_, b);
      Vector pa = a.dot(sa) * a - sa;
      Vector pb = b.dot(sb) * b - sb;
      if (pa.norm() < kParallelTolerance || pb.norm() < kParallelTolerance)
        throw SpectralError("InterpolationIsometries: degenerate perpendicular away from theta in {0, pi}");
      plain_perps.push_back(pa / pa.norm());
      lazy_perps.push_back(pb / pb.norm());
    } else {
      ++dropped_;
    }
    plain_cols.push_back(std::move(a));
    lazy_cols.push_back(std::move(b));
  }
  plain_cols.insert(plain_cols.end(), plain_perps.begin(), plain_perps.end());
  lazy_cols.insert(lazy_cols.end(), lazy_perps.begin(), lazy_perps.end());

  const auto r = idx(plain_cols.size());
  plain_frame_.resize(idx(plain_space_->size()), r);
  lazy_frame_.resize(idx(lazy_space_->size()), r);
  for (Eigen::Index j = 0; j < r; ++j) {
    plain_frame_.col(j) = plain_cols[static_cast<std::size_t>(j)];
    lazy_frame_.col(j) = lazy_cols[static_cast<std::size_t>(j)];
  }
}

InterpolationIsometries::Image InterpolationIsometries::apply_r1(const EdgeState& psi) const {
  if (psi.space().size() != plain_space_->size())
    throw std::invalid_argument("apply_r1: state is not on the interpolated walk's edge space");
  const ComplexVector coeffs = plain_frame_.transpose().cast<Complex>() * psi.amplitudes();
  Image out{EdgeState(lazy_space_, lazy_frame_.cast<Complex>() * coeffs), 0.0};
  out.truncated_mass = std::max(0.0, psi.amplitudes().squaredNorm() - coeffs.squaredNorm());
  return out;
}

EdgeState InterpolationIsometries::apply_r2(const EdgeState& psi) const {
  if (psi.space().size() != plain_space_->size())
    throw std::invalid_argument("apply_r2: state is not on the interpolated walk's edge space");
  const ComplexVector coeffs = plain_frame_.transpose().cast<Complex>() * psi.amplitudes();
  return EdgeState(plain_space_, plain_frame_.cast<Complex>() * coeffs);
}

double InterpolationIsometries::operator_distance() const {
  // ||G F^T - iota F F^T|| = ||G - iota F|| because F has orthonormal columns.
  Matrix diff = lazy_frame_;
  for (std::size_t k = 0; k < plain_space_->size(); ++k) {
    const auto target = lazy_space_->find(plain_space_->row(k), plain_space_->column(k));
    if (!target) throw std::invalid_argument("operator_distance: edge spaces are not nested");
    diff.row(idx(*target)) -= plain_frame_.row(idx(k));
  }
  const Matrix gram = diff.transpose() * diff;
  const auto eig = symmetric_eigen(gram);
  return std::sqrt(std::max(0.0, eig.values.maxCoeff()));
}

double InterpolationIsometries::vertex_local_distance() const {
  const std::size_t n = plain_space_->n_vertices();
  const auto rows = idx(lazy_space_->size());
  const auto cols = idx(plain_space_->size());
  std::vector<Eigen::Index> embed(plain_space_->size());
  for (std::size_t k = 0; k < plain_space_->size(); ++k) {
    const auto target = lazy_space_->find(plain_space_->row(k), plain_space_->column(k));
    if (!target) throw std::invalid_argument("vertex_local_distance: edge spaces are not nested");
    embed[k] = idx(*target);
  }
  const auto embedded = [&](const Vector& v) {
    Vector out = Vector::Zero(rows);
    for (Eigen::Index k = 0; k < cols; ++k) out(embed[static_cast<std::size_t>(k)]) = v(k);
    return out;
  };
  // perpendicular of a inside span{a, SWAP a}, empty when a is symmetric
  const auto perp = [](const Vector& a, const Vector& sa) -> std::optional<Vector> {
    Vector p = a.dot(sa) * a - sa;
    if (p.norm() < kParallelTolerance) return std::nullopt;
    return Vector(p / p.norm());
  };

  Matrix diff = Matrix::Zero(rows, cols);
  for (std::size_t x = 0; x < n; ++x) {
    Vector e = Vector::Zero(idx(n));
    e(idx(x)) = 1.0;
    const Vector a = lift_real(*plain_space_, e);
    const Vector b = lift_real(*lazy_space_, e);
    diff += (b - embedded(a)) * a.transpose();
    const auto pa = perp(a, swap_real(*plain_space_, a));
    const auto pb = perp(b, swap_real(*lazy_space_, b));
    if (pa && pb) diff += (*pb - embedded(*pa)) * pa->transpose();
  }
  const auto eig = symmetric_eigen(diff.transpose() * diff);
  return std::sqrt(std::max(0.0, eig.values.maxCoeff()));
}

std::vector<WalkDistance> walk_distances(const MarkedInstance& inst, const CoinConfig& cfg, std::size_t t_max) {
  const RegularGraph& g = *inst.graph;
  const double d = static_cast<double>(inst.degree());
  const double s = 1.0 - cfg.ell / d;
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("walk_distances: need 0 <= ell <= d");
  const Distribution pibar = Distribution::uniform_unmarked(inst.size(), inst.marked);

  const SzegedyWalk plain(interpolated_matrix(walk_matrix(g), inst.marked, s));
  const SzegedyWalk lazy(lazy_interpolated_matrix(g, inst.marked, cfg.ell, s));
  const LackadaisicalWalk coined(inst, cfg);

  EdgeState psi = plain.initial_state(pibar);
  EdgeState phi = lazy.initial_state(pibar);
  CoinState state = coined.initial_state();

  std::vector<WalkDistance> out;
  out.reserve(t_max + 1);
  for (std::size_t t = 0;; ++t) {
    const ComplexVector lazy_img = isometry_e(phi, inst).amplitudes();
    const ComplexVector plain_img = isometry_e(psi, inst).amplitudes();
    WalkDistance row;
    row.t = t;
    row.exact = (state.amplitudes() - lazy_img).norm();
    row.embedded = (lazy_img - plain_img).norm();
    row.total = row.exact + row.embedded;
    out.push_back(row);
    if (t == t_max) break;
    plain.step(psi);
    lazy.step(phi);
    coined.step(state);
  }
  return out;
}

WalkDistance walk_distance(const MarkedInstance& inst, const CoinConfig& cfg, std::size_t t) {
  return walk_distances(inst, cfg, t).back();
}

}  // namespace lackawalk
