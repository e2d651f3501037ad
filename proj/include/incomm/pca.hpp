#pragma once

#include "incomm/grassmann.hpp"

namespace incomm {

/// Data (features x observations) with each row's mean removed, i.e. D H_n.
class CenteredData {
 public:
  const Matrix& matrix() const { return matrix_; }
  Eigen::Index features() const { return matrix_.rows(); }
  Eigen::Index observations() const { return matrix_.cols(); }

  /// Unbiased sample covariance (1/(n-1)) D H H^T D^T.
  Matrix sample_covariance() const;

  /// Unbiased sample cross-covariance (1/(n-1)) D H (E H)^T.
  Matrix sample_cross_covariance(const CenteredData& other) const;

 private:
  friend CenteredData center(const Matrix& data);
  explicit CenteredData(Matrix m) : matrix_(std::move(m)) {}

  Matrix matrix_;
};

/// Subtracts each row's mean. Requires at least two observations.
CenteredData center(const Matrix& data);

/// Span of the left singular vectors for the k largest singular values of the
/// centered data. Under an exact tie at the cutoff the result is whichever
/// vectors the (deterministic) SVD routine orders first; the subspace is then
/// not unique. Each basis vector is signed so its first nonzero entry is positive.
Subspace pca_subspace(const CenteredData& c, Eigen::Index k);

/// span{e_1, ..., e_k} in R^m.
Subspace trivial_subspace(Eigen::Index m, Eigen::Index k);

}  // namespace incomm
