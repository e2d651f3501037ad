#pragma once

#include <cstdint>
#include <random>

#include "incomm/error.hpp"

namespace incomm::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal();
    return g;
  }

  /// m x k with orthonormal columns, Haar-distributed span.
  Matrix orthonormal(Eigen::Index m, Eigen::Index k) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(m, k));
    Matrix q = qr.householderQ() * Matrix::Identity(m, k);
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < k; ++j) {
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    }
    return q;
  }

  /// Haar-distributed orthogonal m x m matrix.
  Matrix orthogonal(Eigen::Index m) { return orthonormal(m, m); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace incomm::testing
