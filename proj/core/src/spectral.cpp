#include "lackawalk/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace lackawalk {

Discriminant::Discriminant(const StochasticMatrix& m) {
  const Matrix& a = m.entries();
  entries_ = a.cwiseProduct(a.transpose()).cwiseSqrt();
}

Spectrum::Spectrum(SymmetricEigen eig) : values_(std::move(eig.values)), vectors_(std::move(eig.vectors)) {
  const auto n = values_.size();
  angles_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) angles_(k) = std::acos(std::clamp(values_(k), -1.0, 1.0));

  Eigen::Index k = 0;
  while (k < n) {
    Eigen::Index end = k + 1;
    while (end < n && values_(end) - values_(end - 1) < kDegeneracyTolerance) ++end;
    Eigenspace space;
    space.first = static_cast<std::size_t>(k);
    space.dimension = static_cast<std::size_t>(end - k);
    space.eigenvalue = values_.segment(k, end - k).mean();
    space.angle = std::acos(std::clamp(space.eigenvalue, -1.0, 1.0));
    space.unit = std::abs(values_(end - 1) - 1.0) < kUnitEigenvalueTolerance;
    spaces_.push_back(space);
    k = end;
  }
}

double Spectrum::projected_weight(const Eigenspace& space, const Vector& v) const {
  const auto block = vectors_.middleCols(static_cast<Eigen::Index>(space.first),
                                         static_cast<Eigen::Index>(space.dimension));
  return (block.transpose() * v).squaredNorm();
}

Vector Spectrum::project(const Eigenspace& space, const Vector& v) const {
  const auto block = vectors_.middleCols(static_cast<Eigen::Index>(space.first),
                                         static_cast<Eigen::Index>(space.dimension));
  return block * (block.transpose() * v);
}

Spectrum eigendecompose(const Discriminant& d) { return Spectrum(symmetric_eigen(d.entries())); }

SpectralWeights spectral_weights(const Spectrum& spec, const Distribution& pibar) {
  if (pibar.size() != spec.size())
    throw std::invalid_argument("spectral_weights: distribution size does not match spectrum");
  const Vector root = pibar.sqrt();
  SpectralWeights out;
  out.weights.reserve(spec.eigenspaces().size());
  for (const auto& space : spec.eigenspaces()) {
    const double w = spec.projected_weight(space, root);
    out.weights.push_back(w);
    if (space.unit) {
      if (space.dimension > 1 && w > 1e-8)
        throw SpectralError("sqrt(pi-bar) overlaps a " + std::to_string(space.dimension) +
                            "-dimensional eigenvalue-1 eigenspace; the walk is not absorbing "
                            "toward a single marked vertex");
      out.unit_weight += w;
    }
  }
  return out;
}

double interpolated_hitting_time(const Spectrum& spec, const Distribution& pibar) {
  const auto sw = spectral_weights(spec, pibar);
  double ht = 0.0;
  for (std::size_t j = 0; j < sw.weights.size(); ++j) {
    const auto& space = spec.eigenspaces()[j];
    if (space.unit) continue;
    ht += sw.weights[j] / (1.0 - space.eigenvalue);
  }
  return ht;
}

double cotangent_qht_from_spectrum(const Spectrum& spec, const Distribution& pibar) {
  const auto sw = spectral_weights(spec, pibar);
  double sum = 0.0;
  for (std::size_t j = 0; j < sw.weights.size(); ++j) {
    const auto& space = spec.eigenspaces()[j];
    if (space.unit) continue;
    // cot^2(theta/2) = (1 + cos theta) / (1 - cos theta); the weight splits
    // evenly over the e^{+i theta} and e^{-i theta} lifts.
    sum += sw.weights[j] * (1.0 + space.eigenvalue) / (1.0 - space.eigenvalue);
  }
  return std::sqrt(sum);
}

OverlapDecomposition overlap_decomposition(const Spectrum& spec, const Distribution& pibar) {
  if (pibar.size() != spec.size())
    throw std::invalid_argument("overlap_decomposition: distribution size does not match spectrum");
  const Vector root = pibar.sqrt();
  OverlapDecomposition out;
  out.alpha = spec.eigenvectors().transpose() * root;
  for (const auto& space : spec.eigenspaces())
    out.eigenspace_weights.push_back(
        out.alpha.segment(static_cast<Eigen::Index>(space.first),
                          static_cast<Eigen::Index>(space.dimension))
            .squaredNorm());
  const Vector rebuilt = spec.eigenvectors() * out.alpha;
  out.reconstruction_error = (rebuilt - root).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace lackawalk
