#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lackawalk/classical.hpp"
#include "lackawalk/linalg.hpp"

namespace lackawalk {

inline constexpr double kDegeneracyTolerance = 1e-9;
inline constexpr double kUnitEigenvalueTolerance = 1e-10;

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric matrix with entries sqrt(M_xy * M_yx).
class Discriminant {
 public:
  explicit Discriminant(const StochasticMatrix& m);

  const Matrix& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

 private:
  Matrix entries_;
};

inline Discriminant discriminant(const StochasticMatrix& m) { return Discriminant(m); }

/// A maximal run of sorted eigenvalues closer than kDegeneracyTolerance.
struct Eigenspace {
  std::size_t first = 0;  // column range [first, first + dimension)
  std::size_t dimension = 0;
  double eigenvalue = 0.0;  // mean over the run
  double angle = 0.0;       // in [0, pi]
  bool unit = false;        // |eigenvalue - 1| < kUnitEigenvalueTolerance
};

class Spectrum {
 public:
  explicit Spectrum(SymmetricEigen eig);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  const Vector& eigenvalues() const noexcept { return values_; }
  /// theta_k in [0, pi] with lambda_k = cos(theta_k).
  const Vector& angles() const noexcept { return angles_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }
  const std::vector<Eigenspace>& eigenspaces() const noexcept { return spaces_; }

  /// Squared norm of the projection of v onto one eigenspace.
  double projected_weight(const Eigenspace& space, const Vector& v) const;
  Vector project(const Eigenspace& space, const Vector& v) const;

 private:
  Vector values_;
  Vector angles_;
  Matrix vectors_;
  std::vector<Eigenspace> spaces_;
};

Spectrum eigendecompose(const Discriminant& d);

/// Per-eigenspace weights of sqrt(pi-bar). The unit eigenspace (if any) is
/// reported separately; more than one dimension of unit overlap throws.
struct SpectralWeights {
  std::vector<double> weights;  // aligned with Spectrum::eigenspaces()
  double unit_weight = 0.0;
};
SpectralWeights spectral_weights(const Spectrum& spec, const Distribution& pibar);

/// HT(s) = sum over non-unit eigenspaces of |Pi_lambda sqrt(pibar)|^2 / (1 - lambda).
double interpolated_hitting_time(const Spectrum& spec, const Distribution& pibar);

/// Cotangent quantum hitting time of the Szegedy walk of the source chain on
/// T sqrt(pibar), computed from the discriminant spectrum alone: each
/// non-unit eigenspace contributes weight * cot^2(theta/2).
double cotangent_qht_from_spectrum(const Spectrum& spec, const Distribution& pibar);

struct OverlapDecomposition {
  Vector alpha;                  // <lambda_k | sqrt(pibar)>
  std::vector<double> eigenspace_weights;
  double reconstruction_error = 0.0;  // max-norm of sum alpha_k |lambda_k> - sqrt(pibar)
};
OverlapDecomposition overlap_decomposition(const Spectrum& spec, const Distribution& pibar);

}  // namespace lackawalk
