#include "incomm/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace incomm {

namespace {

constexpr double kOrthonormalTol = 1e-10;
constexpr double kCosineSlack = 1e-10;
constexpr double kZeroCrossCov = 1e-14;

void require_compatible(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) {
    throw DimensionError("incompatible subspaces: G(" + std::to_string(a.dim()) + "," +
                         std::to_string(a.ambient_dim()) + ") vs G(" + std::to_string(b.dim()) +
                         "," + std::to_string(b.ambient_dim()) + ")");
  }
}

double clamp_cosine(double c) {
  if (c < -kCosineSlack || c > 1.0 + kCosineSlack) {
    throw InvariantError("principal cosine out of range: " + std::to_string(c));
  }
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  const auto m = basis_.rows();
  const auto k = basis_.cols();
  if (k < 1 || k > m) {
    throw RangeError("subspace dimension k=" + std::to_string(k) + " must satisfy 1 <= k <= m=" +
                     std::to_string(m));
  }
  const Matrix gram = basis_.transpose() * basis_;
  const double off = (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(off <= kOrthonormalTol)) {
    throw InvariantError("subspace basis is not orthonormal (max deviation " +
                         std::to_string(off) + ")");
  }
}

Subspace Subspace::from_spanning_set(const Matrix& spanning) {
  const auto k = spanning.cols();
  Eigen::ColPivHouseholderQR<Matrix> qr(spanning);
  if (qr.rank() < k) {
    throw DeficientRank("spanning set has rank " + std::to_string(qr.rank()) + " < " +
                        std::to_string(k));
  }
  Eigen::HouseholderQR<Matrix> hqr(spanning);
  Matrix q = hqr.householderQ() * Matrix::Identity(spanning.rows(), k);
  return Subspace(std::move(q));
}

Projector::Projector(const Subspace& s)
    : matrix_(s.basis() * s.basis().transpose()), rank_(s.dim()) {}

Projector projector(const Subspace& s) { return Projector(s); }

PrincipalAngles principal_angles(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  const Matrix core = a.basis().transpose() * b.basis();
  // JacobiSVD returns singular values sorted in decreasing order.
  const Vector sv = Eigen::JacobiSVD<Matrix>(core).singularValues();
  PrincipalAngles out;
  out.cosines.reserve(sv.size());
  out.angles.reserve(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double c = clamp_cosine(sv(i));
    out.cosines.push_back(c);
    out.angles.push_back(std::acos(c));
  }
  return out;
}

std::vector<double> principal_cosines_via_projectors(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  const Matrix prod = projector(a).matrix() * projector(b).matrix();
  const Vector sv = Eigen::JacobiSVD<Matrix>(prod).singularValues();
  return {sv.data(), sv.data() + a.dim()};
}

double hausdorff_sq(const Subspace& a, const Subspace& b) {
  double total = 0.0;
  for (double c : principal_angles(a, b).cosines) total += 2.0 * (1.0 - c);
  return total;
}

double top_singular_sum(const Matrix& m, Eigen::Index k) {
  if (k < 1 || k > std::min(m.rows(), m.cols())) {
    throw RangeError("k=" + std::to_string(k) + " out of range for a " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  const Vector sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
  return sv.head(k).sum();
}

double weighted_hausdorff_sq(const Subspace& a, const Subspace& b, const Matrix& cross_cov) {
  require_compatible(a, b);
  const auto m = a.ambient_dim();
  const auto k = a.dim();
  if (cross_cov.rows() != m || cross_cov.cols() != m) {
    throw DimensionError("cross-covariance must be " + std::to_string(m) + "x" +
                         std::to_string(m));
  }
  if (cross_cov.cwiseAbs().maxCoeff() < kZeroCrossCov) return hausdorff_sq(a, b);

  const double mean_top = top_singular_sum(cross_cov, k) / static_cast<double>(k);
  // P_a C P_b = A (A^T C B) B^T with A, B orthonormal, so its nonzero
  // singular values are those of the k x k core.
  const Matrix core = a.basis().transpose() * cross_cov * b.basis();
  const Vector sv = Eigen::JacobiSVD<Matrix>(core).singularValues();
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) total += 2.0 * (1.0 - sv(i) / mean_top);
  // Rounding can leave the sum a few ulps below zero.
  return (total < 0.0 && total > -1e-12) ? 0.0 : total;
}

Subspace apply_isometry(const Matrix& w, const Subspace& b) {
  const auto m = b.ambient_dim();
  if (w.rows() != m || w.cols() != m) {
    throw DimensionError("isometry must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  const double off = (w.transpose() * w - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (!(off <= kOrthonormalTol)) {
    throw InvariantError("isometry is not orthogonal (max deviation " + std::to_string(off) + ")");
  }
  return Subspace(w * b.basis());
}

}  // namespace incomm
