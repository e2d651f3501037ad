#include "incomm/pca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace incomm {

CenteredData center(const Matrix& data) {
  if (data.cols() < 2) {
    throw RangeError("centering needs at least 2 observations, got " +
                     std::to_string(data.cols()));
  }
  const Vector means = data.rowwise().mean();
  return CenteredData(data.colwise() - means);
}

Matrix CenteredData::sample_covariance() const {
  const double denom = static_cast<double>(observations() - 1);
  return (matrix_ * matrix_.transpose()) / denom;
}

Matrix CenteredData::sample_cross_covariance(const CenteredData& other) const {
  if (other.features() != features() || other.observations() != observations()) {
    throw DimensionError("cross-covariance of differently shaped data");
  }
  const double denom = static_cast<double>(observations() - 1);
  return (matrix_ * other.matrix_.transpose()) / denom;
}

Subspace pca_subspace(const CenteredData& c, Eigen::Index k) {
  const auto m = c.features();
  if (k < 1 || k > m) {
    throw RangeError("PCA dimension k=" + std::to_string(k) + " must satisfy 1 <= k <= m=" +
                     std::to_string(m));
  }
  Eigen::BDCSVD<Matrix> svd(c.matrix(), Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double tol = static_cast<double>(std::max(c.features(), c.observations())) *
                     std::numeric_limits<double>::epsilon() * (sv.size() > 0 ? sv(0) : 0.0);
  if (sv.size() < k || !(sv(k - 1) > tol)) {
    throw DeficientRank("k=" + std::to_string(k) + " exceeds the numerical rank of the data");
  }
  Matrix basis = svd.matrixU().leftCols(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    auto col = basis.col(j);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
  }
  return Subspace(std::move(basis));
}

Subspace trivial_subspace(Eigen::Index m, Eigen::Index k) {
  if (k < 1 || k > m) {
    throw RangeError("trivial subspace needs 1 <= k <= m");
  }
  return Subspace(Matrix::Identity(m, k));
}

}  // namespace incomm
