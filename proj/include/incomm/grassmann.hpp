#pragma once

#include <span>
#include <vector>

#include "incomm/error.hpp"

namespace incomm {

/// A point of the Grassmannian G(k, m), stored as an m x k matrix with
/// orthonormal columns. The constructor rejects bases that are not
/// orthonormal to within 1e-10.
class Subspace {
 public:
  explicit Subspace(Matrix basis);

  /// Orthonormalizes the columns of `spanning` (thin QR) first. The columns
  /// must be linearly independent.
  static Subspace from_spanning_set(const Matrix& spanning);

  const Matrix& basis() const { return basis_; }
  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }

 private:
  Matrix basis_;
};

/// Orthogonal projection onto a subspace, kept as a full m x m matrix.
class Projector {
 public:
  explicit Projector(const Subspace& s);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index rank() const { return rank_; }

 private:
  Matrix matrix_;
  Eigen::Index rank_;
};

/// Principal angles in nondecreasing order (so cosines are nonincreasing).
struct PrincipalAngles {
  std::vector<double> angles;
  std::vector<double> cosines;
};

Projector projector(const Subspace& s);

PrincipalAngles principal_angles(const Subspace& a, const Subspace& b);

/// Cosines of the principal angles taken from the m x m product P_a P_b
/// (its k largest singular values). Slower than principal_angles; kept as an
/// independent route for cross-checking.
std::vector<double> principal_cosines_via_projectors(const Subspace& a, const Subspace& b);

/// Square Hausdorff distance: sum_i 2 (1 - cos theta_i), in [0, 2k].
double hausdorff_sq(const Subspace& a, const Subspace& b);

/// Cross-covariance weighted square distance. Falls back to hausdorff_sq
/// when every entry of cross_cov is below 1e-14 in magnitude.
double weighted_hausdorff_sq(const Subspace& a, const Subspace& b, const Matrix& cross_cov);

/// The subspace {w x : x in b} for an orthogonal w.
Subspace apply_isometry(const Matrix& w, const Subspace& b);

/// Sum of the k largest singular values of m.
double top_singular_sum(const Matrix& m, Eigen::Index k);

}  // namespace incomm
