#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace lackawalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues ascending; column k of `vectors` is the unit eigenvector of
/// `values[k]`.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Full eigensystem of a real symmetric matrix by Householder reduction to
/// tridiagonal form followed by the implicit-shift QL iteration.
///
/// Deterministic: eigenvalues ascending, and each eigenvector is signed so
/// that its largest-magnitude entry is positive (lowest index wins among
/// entries within 1e-10 of the maximum). Only the lower triangle is read.
/// Throws ConvergenceError when QL needs more than 50 N iterations in total.
SymmetricEigen symmetric_eigen(const Matrix& a);

}  // namespace lackawalk
