#pragma once

#include <cstdint>

#include "incomm/error.hpp"
#include "incomm/rng.hpp"

namespace incomm {

/// Second-moment structure of the stacked vector (X, Y): Cov(X), Cov(Y) and
/// Cov(X, Y) (rows index X, columns index Y). Construction checks symmetry,
/// positive semidefiniteness of each diagonal block and of the assembled
/// 2m x 2m matrix, and that Cov(X), Cov(Y) are nonzero.
class JointCovariance {
 public:
  JointCovariance(Matrix cov_x, Matrix cov_y, Matrix cov_xy);

  const Matrix& cov_x() const { return cov_x_; }
  const Matrix& cov_y() const { return cov_y_; }
  const Matrix& cov_xy() const { return cov_xy_; }
  Eigen::Index dim() const { return cov_x_.rows(); }

  /// [[Cov(X), Cov(X,Y)], [Cov(X,Y)^T, Cov(Y)]]
  Matrix block() const;

 private:
  Matrix cov_x_;
  Matrix cov_y_;
  Matrix cov_xy_;
};

/// Paired samples, one observation per column.
struct DataPair {
  Matrix x;
  Matrix y;
};

enum class NoiseScenario { mixture, linear };
enum class BaseDistribution { standard_normal, uniform };

/// Two scientists measuring the same m features with accuracy gamma. Z, Z', Z''
/// are iid with variance alpha. In the mixture scenario each measurement is Z
/// with probability gamma and the scientist's own noise otherwise; in the
/// linear scenario it is gamma Z + sqrt(1 - gamma^2) noise.
struct ScientistParams {
  Eigen::Index m = 6;
  double gamma = 0.5;
  NoiseScenario scenario = NoiseScenario::linear;
  BaseDistribution base = BaseDistribution::standard_normal;
  double alpha = 1.0;

  void validate() const;
};

DataPair scientists_sample(const ScientistParams& p, Eigen::Index n, Rng& rng);

/// alpha I_m on the diagonal blocks, gamma^2 alpha I_m off the diagonal.
JointCovariance scientists_covariance(const ScientistParams& p);

/// Zero-mean Gaussian sampler for a joint covariance. Holds the symmetric PSD
/// square root of the block matrix (eigendecomposition, negative eigenvalues
/// clamped to 0), so singular models such as Cov(X,Y) = Cov(X) = Cov(Y) work.
class MvnSampler {
 public:
  explicit MvnSampler(const JointCovariance& jc);

  DataPair sample(Eigen::Index n, Rng& rng) const;
  const Matrix& root() const { return root_; }

 private:
  Eigen::Index m_;
  Matrix root_;
};

DataPair mvn_sample(const JointCovariance& jc, Eigen::Index n, Rng& rng);

/// Cov(X) = Cov(Y) = I_m, Cov(X,Y) = beta I_m.
JointCovariance identity_pair(Eigen::Index m, double beta);

/// Cov(X) = Cov(Y) = diag(1, lambda2, .7, ..., .7), Cov(X,Y) = beta I_m.
JointCovariance spiked_diag_pair(Eigen::Index m, double lambda2, double beta);

struct ReversedPair {
  JointCovariance cov;
  Matrix w;  // reversal permutation (ones on the antidiagonal)
};

/// The spiked model with Y's coordinates in reverse order:
/// Cov(Y) = W Cov(X) W^T and Cov(X,Y) = beta W.
ReversedPair reversed_pair(Eigen::Index m, double lambda2, double beta);

Matrix reversal_permutation(Eigen::Index m);

}  // namespace incomm
