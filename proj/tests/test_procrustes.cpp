#include <doctest.h>

#include <cmath>

#include "incomm/pca.hpp"
#include "incomm/procrustes.hpp"
#include "test_support.hpp"

using namespace incomm;

namespace {

NormalizedProjection random_normalized(testing::Gen& gen, Eigen::Index rows, Eigen::Index cols,
                                       Eigen::Index k) {
  Matrix g = gen.gaussian(rows, cols);
  g *= std::sqrt(static_cast<double>(k)) / g.norm();
  return NormalizedProjection(std::move(g), k);
}

double objective(const Matrix& q, const NormalizedProjection& x, const NormalizedProjection& y) {
  return (q * x.matrix() - y.matrix()).squaredNorm();
}

}  // namespace

TEST_CASE("normalize_projected rescales the projected data to norm sqrt(k)") {
  const Projector p(Subspace(Matrix::Identity(2, 1)));
  const Matrix data = (Matrix(2, 2) << 3, -3, 5, -5).finished();
  const auto out = normalize_projected(p, data, 1);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(out.matrix()(0, 0) == doctest::Approx(s));
  CHECK(out.matrix()(0, 1) == doctest::Approx(-s));
  CHECK(out.matrix().row(1).norm() == 0.0);
  CHECK(out.matrix().norm() == doctest::Approx(1.0));
}

TEST_CASE("normalize_projected on PCA projections of random data") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = center(gen.gaussian(6, 100));
    const auto out = normalize_projected(projector(pca_subspace(c, 2)), c.matrix(), 2);
    CHECK(std::abs(out.matrix().norm() - std::sqrt(2.0)) < 1e-9);
  }
}

TEST_CASE("normalize_projected rejects data orthogonal to the subspace") {
  const Projector p(Subspace(Matrix::Identity(3, 1)));
  Matrix data = Matrix::Zero(3, 4);
  data.row(2) << 1, -1, 2, -2;
  CHECK_THROWS_AS(normalize_projected(p, data, 1), DegenerateProjection);
  CHECK_THROWS_AS(normalize_projected(p, Matrix::Ones(4, 2), 1), DimensionError);
}

TEST_CASE("fit_error_sq: perfect fit and disjoint supports") {
  testing::Gen gen(12);
  const auto x = random_normalized(gen, 4, 7, 2);
  CHECK(std::abs(fit_error_sq(x, x)) < 1e-9);

  // y x^T = 0 needs the rows of x and y to be orthogonal in R^n, i.e.
  // disjoint observation (column) supports. Disjoint feature rows are not
  // enough: a rotation maps rows 1-2 onto rows 3-4.
  Matrix a = Matrix::Zero(4, 6);
  Matrix b = Matrix::Zero(4, 6);
  a.leftCols(3) = gen.gaussian(4, 3);
  b.rightCols(3) = gen.gaussian(4, 3);
  a *= std::sqrt(2.0) / a.norm();
  b *= std::sqrt(2.0) / b.norm();
  CHECK(fit_error_sq(NormalizedProjection(a, 2), NormalizedProjection(b, 2)) ==
        doctest::Approx(4.0));
}

TEST_CASE("fit_error_sq matches the objective at the closed-form rotation") {
  testing::Gen gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_normalized(gen, 2, 5, 2);
    const auto y = random_normalized(gen, 2, 5, 2);
    const Matrix q = optimal_rotation(x, y);
    CHECK(std::abs(fit_error_sq(x, y) - objective(q, x, y)) < 1e-9);
  }
}

TEST_CASE("optimal_rotation is orthogonal, exact when alignment exists, and beats probes") {
  testing::Gen gen(14);
  const auto x = random_normalized(gen, 3, 8, 2);
  const Matrix self = optimal_rotation(x, x);
  CHECK((self.transpose() * self - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((self * x.matrix() - x.matrix()).norm() < 1e-9);

  const Matrix r = gen.orthogonal(3);
  const NormalizedProjection y(r * x.matrix(), 2);
  CHECK(objective(optimal_rotation(x, y), x, y) < 1e-18 + 1e-9);

  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_normalized(gen, 2, 5, 2);
    const auto b = random_normalized(gen, 2, 5, 2);
    const double best = objective(optimal_rotation(a, b), a, b);
    for (int probe = 0; probe < 1000; ++probe) {
      CHECK(best <= objective(gen.orthogonal(2), a, b) + 1e-12);
    }
  }
}

TEST_CASE("fit_error_sq is bounded, symmetric and left-orthogonally invariant") {
  testing::Gen gen(15);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = gen.uniform_int(1, 8);
    const int n = gen.uniform_int(1, 20);
    const int k = gen.uniform_int(1, 4);
    const auto x = random_normalized(gen, m, n, k);
    const auto y = random_normalized(gen, m, n, k);
    const double e = fit_error_sq(x, y);
    CHECK(e >= 0.0);
    CHECK(e <= 2.0 * k);
    CHECK(std::abs(e - fit_error_sq(y, x)) < 1e-9);
    const NormalizedProjection rx(gen.orthogonal(m) * x.matrix(), k);
    CHECK(std::abs(e - fit_error_sq(rx, y)) < 1e-9);
  }
}

TEST_CASE("shape mismatches are rejected") {
  testing::Gen gen(16);
  const auto x = random_normalized(gen, 3, 5, 1);
  const auto y = random_normalized(gen, 3, 6, 1);
  const auto z = random_normalized(gen, 3, 5, 2);
  CHECK_THROWS_AS(fit_error_sq(x, y), DimensionError);
  CHECK_THROWS_AS(fit_error_sq(x, z), DimensionError);
  CHECK_THROWS_AS(optimal_rotation(x, y), DimensionError);
  CHECK_THROWS_AS(NormalizedProjection(Matrix::Ones(2, 2), 1), InvariantError);
}
