#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lackawalk/classical.hpp"
#include "lackawalk/coined_walk.hpp"
#include "lackawalk/graph.hpp"
#include "lackawalk/linalg.hpp"
#include "lackawalk/spectral.hpp"

namespace lackawalk {

/// Reduced edge space of a chain M: the pairs (x, y) with M_xy > 0 or
/// M_yx > 0, grouped by x with y ascending. Closed under (x,y) -> (y,x).
class EdgeSpace {
 public:
  explicit EdgeSpace(const StochasticMatrix& m);

  std::size_t size() const noexcept { return cols_.size(); }
  std::size_t n_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t row_begin(Vertex x) const { return offsets_[x]; }
  std::size_t row_end(Vertex x) const { return offsets_[x + 1]; }
  Vertex row(std::size_t k) const { return rows_[k]; }
  Vertex column(std::size_t k) const { return cols_[k]; }
  /// sqrt(M_xy) for pair k = (x, y); zero when only M_yx is positive.
  double weight(std::size_t k) const { return weights_[k]; }
  std::size_t swap_partner(std::size_t k) const { return partner_[k]; }
  std::optional<std::size_t> find(Vertex x, Vertex y) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> rows_;
  std::vector<Vertex> cols_;
  std::vector<double> weights_;
  std::vector<std::size_t> partner_;
};

class EdgeState {
 public:
  explicit EdgeState(std::shared_ptr<const EdgeSpace> space);
  EdgeState(std::shared_ptr<const EdgeSpace> space, ComplexVector amplitudes);

  const EdgeSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const EdgeSpace>& shared_space() const noexcept { return space_; }
  ComplexVector& amplitudes() noexcept { return amp_; }
  const ComplexVector& amplitudes() const noexcept { return amp_; }
  /// Amplitude on (x, y); zero outside the support.
  Complex at(Vertex x, Vertex y) const;
  double norm() const { return amp_.norm(); }

 private:
  friend class SzegedyWalk;
  std::shared_ptr<const EdgeSpace> space_;
  ComplexVector amp_;
  ComplexVector spare_;
};

/// Szegedy walk SWAP * Ref(A) of a chain M on its reduced edge space, where
/// Ref(A) = 2 T T^dagger - I and T|x> = sum_y sqrt(M_xy)|x,y>. Each step is
/// O(|support|).
class SzegedyWalk {
 public:
  explicit SzegedyWalk(StochasticMatrix m);

  const StochasticMatrix& chain() const noexcept { return chain_; }
  const std::shared_ptr<const EdgeSpace>& space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return space_->size(); }

  EdgeState zero_state() const { return EdgeState(space_); }
  /// T v.
  EdgeState apply_t(const ComplexVector& v) const;
  EdgeState apply_t(const Vector& v) const { return apply_t(ComplexVector(v.cast<Complex>())); }
  /// T^dagger psi.
  ComplexVector apply_t_adjoint(const EdgeState& psi) const;
  /// T sqrt(pibar).
  EdgeState initial_state(const Distribution& pibar) const { return apply_t(pibar.sqrt()); }

  void apply_reflection(EdgeState& psi) const;
  void apply_swap(EdgeState& psi) const;
  void step(EdgeState& psi) const;

 private:
  void check(const EdgeState& psi) const;

  StochasticMatrix chain_;
  std::shared_ptr<const EdgeSpace> space_;
};

/// Eigenvector of the walk lifted from one discriminant eigenvector.
struct SzegedyEigenpair {
  double theta = 0.0;      // signed phase: eigenvalue is exp(i theta)
  Complex eigenvalue{1.0, 0.0};
  int branch = 0;          // +1 / -1 for the paired lifts, 0 for the single lift at theta in {0, pi}
  std::size_t source = 0;  // column of the discriminant spectrum
  EdgeState vector;
  double residual = 0.0;   // ||U v - exp(i theta) v||
};

/// Lifts every discriminant eigenvector lambda = cos(theta): for theta not in
/// {0, pi} the pair (T|lambda> +- i (T|lambda>)^perp)/sqrt(2) with eigenvalues
/// exp(+-i theta), where (T|lambda>)^perp is SWAP T|lambda> orthonormalized
/// against T|lambda> and signed so T|lambda> = (phi+ + phi-)/sqrt(2). At theta
/// in {0, pi} the single vector T|lambda>. Throws SpectralError when SWAP
/// T|lambda> is parallel to T|lambda> away from theta in {0, pi}.
std::vector<SzegedyEigenpair> lift_eigenpairs(const Spectrum& spec, const SzegedyWalk& walk);

/// sqrt( sum over eigenpairs with eigenvalue != 1 of |<phi|w>|^2 cot^2(theta/2) ).
double cotangent_qht_direct(std::span<const SzegedyEigenpair> pairs, const EdgeState& w);

/// Discriminant eigenvectors of `base` with eigenvalues re-measured on
/// `other` by Rayleigh quotients. `max_residual` is max_k ||D v_k - mu_k v_k||,
/// which is ~0 exactly when the two discriminants share eigenvectors.
struct TransportedSpectrum {
  Spectrum spectrum;
  double max_residual = 0.0;
};
TransportedSpectrum transport_spectrum(const Spectrum& base, const Discriminant& other);

/// Identification of an edge space inside arcs and self-loops with coin
/// space: (x, y_i) -> |x, e_i>, (x, x) -> |x, loop>, except (m, m) -> -|m, loop>.
/// Throws std::invalid_argument for a pair that is neither an arc nor a loop.
CoinState isometry_e(const EdgeState& psi, const MarkedInstance& inst);
/// Adjoint of isometry_e onto `space`; loop slots with no (x, x) pair are dropped.
EdgeState isometry_e_adjoint(const CoinState& state, std::shared_ptr<const EdgeSpace> space,
                             const MarkedInstance& inst);

/// Maps between the walk of the interpolated chain and the walk of its lazy
/// counterpart, which share discriminant eigenvectors. With F the orthonormal
/// frame {T|lambda_k>, (T|lambda_k>)^perp} of the first walk and G the
/// matching frame of the second, R1 = G F^dagger sends every lifted
/// eigenvector to its lazy counterpart and R2 = F F^dagger is the orthogonal
/// projection onto the span the first walk evolves in.
class InterpolationIsometries {
 public:
  InterpolationIsometries(const SzegedyWalk& plain, const SzegedyWalk& lazy, const Spectrum& plain_spectrum);

  struct Image {
    EdgeState state;
    double truncated_mass = 0.0;  // ||psi||^2 outside the frame span, annihilated by R1
  };

  Image apply_r1(const EdgeState& psi) const;
  EdgeState apply_r2(const EdgeState& psi) const;
  /// Largest singular value of R1 - R2 with both images placed in the lazy
  /// walk's edge space.
  double operator_distance() const;
  /// ||R1 - R2|| for the vertex-local operators built from |x, M_x> and its
  /// perpendicular inside span{|x, M_x>, SWAP |x, M_x>}, one pair per vertex.
  /// Those are not an isometry and a projection in general, but their
  /// difference shrinks with N where operator_distance() need not.
  double vertex_local_distance() const;
  /// Frame directions where either walk has no perpendicular (theta in {0, pi}).
  std::size_t dropped_perp_terms() const noexcept { return dropped_; }

  const Matrix& plain_frame() const noexcept { return plain_frame_; }
  const Matrix& lazy_frame() const noexcept { return lazy_frame_; }

 private:
  std::shared_ptr<const EdgeSpace> plain_space_;
  std::shared_ptr<const EdgeSpace> lazy_space_;
  Matrix plain_frame_;
  Matrix lazy_frame_;
  std::size_t dropped_ = 0;
};

/// Distances between the three walks on a marked instance with ell = cfg.ell
/// and s = 1 - ell/d, at step t:
///   exact    = || L^t init_lazy - E U_lazy^t init_lazy_ip ||
///   embedded = || E U_lazy^t init_lazy_ip - E U^t init_ip ||
///   total    = exact + embedded
struct WalkDistance {
  std::size_t t = 0;
  double exact = 0.0;
  double embedded = 0.0;
  double total = 0.0;
};
std::vector<WalkDistance> walk_distances(const MarkedInstance& inst, const CoinConfig& cfg, std::size_t t_max);
WalkDistance walk_distance(const MarkedInstance& inst, const CoinConfig& cfg, std::size_t t);

}  // namespace lackawalk
