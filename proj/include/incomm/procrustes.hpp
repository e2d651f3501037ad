#pragma once

#include "incomm/grassmann.hpp"

namespace incomm {

/// Projected, centered data rescaled to Frobenius norm sqrt(k).
class NormalizedProjection {
 public:
  NormalizedProjection(Matrix matrix, Eigen::Index scale_dim);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index scale_dim() const { return scale_dim_; }

 private:
  Matrix matrix_;
  Eigen::Index scale_dim_;
};

/// (sqrt(k) / ||P D||_F) * P D. Throws DegenerateProjection when P D = 0.
NormalizedProjection normalize_projected(const Projector& p, const Matrix& centered_data,
                                         Eigen::Index k);

/// Square orthogonal-Procrustes fitting error min_{Q^T Q = I} ||Q x - y||_F^2,
/// evaluated in closed form as 2k - 2 * nuclear_norm(y x^T) and clamped to [0, 2k].
double fit_error_sq(const NormalizedProjection& x, const NormalizedProjection& y);

/// The minimizing Q = U V^T, where y x^T = U S V^T. Diagnostics and tests only.
Matrix optimal_rotation(const NormalizedProjection& x, const NormalizedProjection& y);

}  // namespace incomm
