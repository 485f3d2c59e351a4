#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lackawalk/linalg.hpp"

using namespace lackawalk;

namespace {

Matrix random_symmetric(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = normal(rng);
  return a;
}

}  // namespace

TEST_CASE("eigensystem of random symmetric matrices") {
  for (Eigen::Index n : {1, 2, 3, 7, 20, 64}) {
    CAPTURE(n);
    const Matrix a = random_symmetric(n, static_cast<std::uint64_t>(n));
    const auto eig = symmetric_eigen(a);
    const Matrix& v = eig.vectors;
    CHECK((v.transpose() * v - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((v * eig.values.asDiagonal() * v.transpose() - a).cwiseAbs().maxCoeff() < 1e-10);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(eig.values(k - 1) <= eig.values(k));

    Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    CHECK((ref.eigenvalues() - eig.values).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("sign convention: largest entry positive, lowest index on ties") {
  const Matrix a = random_symmetric(12, 99);
  const auto eig = symmetric_eigen(a);
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const auto col = eig.vectors.col(k);
    const double top = col.cwiseAbs().maxCoeff();
    Eigen::Index first = 0;
    while (std::abs(col(first)) < top - 1e-10) ++first;
    CHECK(col(first) > 0.0);
  }

  // ties: (1, -1)/sqrt(2) must come out as (+, -)
  Matrix b(2, 2);
  b << 0.0, -1.0, -1.0, 0.0;
  const auto e2 = symmetric_eigen(b);
  CHECK(e2.values(0) == doctest::Approx(-1.0));
  CHECK(e2.vectors(0, 1) > 0.0);
  CHECK(e2.vectors(0, 0) > 0.0);
}

TEST_CASE("identity and diagonal inputs") {
  const auto eig = symmetric_eigen(Matrix::Identity(5, 5));
  CHECK((eig.values.array() - 1.0).abs().maxCoeff() < 1e-15);
  CHECK((eig.vectors.transpose() * eig.vectors - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-14);

  Vector diag(4);
  diag << 3.0, -1.0, 2.0, 0.5;
  const auto d = symmetric_eigen(Matrix(diag.asDiagonal()));
  CHECK(d.values(0) == doctest::Approx(-1.0));
  CHECK(d.values(3) == doctest::Approx(3.0));
}

TEST_CASE("circulant spectrum") {
  const Eigen::Index n = 16;
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) a(x, (x + 1) % n) = a((x + 1) % n, x) = 0.5;
  const auto eig = symmetric_eigen(a);
  std::vector<double> expected;
  for (Eigen::Index k = 0; k < n; ++k) expected.push_back(std::cos(2.0 * M_PI * static_cast<double>(k) / n));
  std::sort(expected.begin(), expected.end());
  for (Eigen::Index k = 0; k < n; ++k) CHECK(std::abs(eig.values(k) - expected[static_cast<std::size_t>(k)]) < 1e-12);
}

TEST_CASE("deterministic output") {
  const Matrix a = random_symmetric(30, 5);
  const auto e1 = symmetric_eigen(a);
  const auto e2 = symmetric_eigen(a);
  CHECK((e1.values - e2.values).norm() == 0.0);
  CHECK((e1.vectors - e2.vectors).norm() == 0.0);
}
