#include "incomm/procrustes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace incomm {

namespace {

constexpr double kNormTol = 1e-9;

void require_same_shape(const NormalizedProjection& x, const NormalizedProjection& y) {
  if (x.matrix().rows() != y.matrix().rows() || x.matrix().cols() != y.matrix().cols() ||
      x.scale_dim() != y.scale_dim()) {
    throw DimensionError("normalized projections differ in shape or scale dimension");
  }
}

}  // namespace

NormalizedProjection::NormalizedProjection(Matrix matrix, Eigen::Index scale_dim)
    : matrix_(std::move(matrix)), scale_dim_(scale_dim) {
  if (scale_dim_ < 1) throw RangeError("scale dimension must be positive");
  const double target = std::sqrt(static_cast<double>(scale_dim_));
  if (std::abs(matrix_.norm() - target) > kNormTol) {
    throw InvariantError("normalized projection has Frobenius norm " +
                         std::to_string(matrix_.norm()) + ", expected " + std::to_string(target));
  }
}

NormalizedProjection normalize_projected(const Projector& p, const Matrix& centered_data,
                                         Eigen::Index k) {
  if (p.matrix().rows() != centered_data.rows()) {
    throw DimensionError("projector is " + std::to_string(p.matrix().rows()) +
                         "-dimensional but data has " + std::to_string(centered_data.rows()) +
                         " features");
  }
  Matrix projected = p.matrix() * centered_data;
  const double norm = projected.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateProjection();
  projected *= std::sqrt(static_cast<double>(k)) / norm;
  return NormalizedProjection(std::move(projected), k);
}

double fit_error_sq(const NormalizedProjection& x, const NormalizedProjection& y) {
  require_same_shape(x, y);
  const Matrix cross = y.matrix() * x.matrix().transpose();
  const double nuclear = Eigen::JacobiSVD<Matrix>(cross).singularValues().sum();
  const double two_k = 2.0 * static_cast<double>(x.scale_dim());
  return std::clamp(two_k - 2.0 * nuclear, 0.0, two_k);
}

Matrix optimal_rotation(const NormalizedProjection& x, const NormalizedProjection& y) {
  require_same_shape(x, y);
  const Matrix cross = y.matrix() * x.matrix().transpose();
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace incomm
