#include "incomm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace incomm {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-10;

double min_eigenvalue(const Matrix& sym) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

void check_covariance_block(const Matrix& c, const char* name) {
  if (c.rows() != c.cols()) throw DimensionError(std::string(name) + " must be square");
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw InvariantError(std::string(name) + " is not symmetric");
  }
  if (c.cwiseAbs().maxCoeff() == 0.0) throw InvariantError(std::string(name) + " is zero");
  if (min_eigenvalue(c) < -kPsdTol) {
    throw InvariantError(std::string(name) + " is not positive semidefinite");
  }
}

Matrix spiked_diagonal(Eigen::Index m, double lambda2) {
  if (m < 2) throw RangeError("spiked model needs m >= 2");
  Vector d = Vector::Constant(m, 0.7);
  d(0) = 1.0;
  d(1) = lambda2;
  return d.asDiagonal();
}

}  // namespace

JointCovariance::JointCovariance(Matrix cov_x, Matrix cov_y, Matrix cov_xy)
    : cov_x_(std::move(cov_x)), cov_y_(std::move(cov_y)), cov_xy_(std::move(cov_xy)) {
  const auto m = cov_x_.rows();
  if (m < 1 || cov_y_.rows() != m || cov_xy_.rows() != m || cov_xy_.cols() != m) {
    throw DimensionError("covariance blocks must all be m x m");
  }
  check_covariance_block(cov_x_, "Cov(X)");
  check_covariance_block(cov_y_, "Cov(Y)");
  if (min_eigenvalue(block()) < -kPsdTol) {
    throw InvariantError("joint covariance is not positive semidefinite");
  }
}

Matrix JointCovariance::block() const {
  const auto m = dim();
  Matrix b(2 * m, 2 * m);
  b << cov_x_, cov_xy_, cov_xy_.transpose(), cov_y_;
  return b;
}

void ScientistParams::validate() const {
  if (m < 1) throw RangeError("m must be positive");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw RangeError("gamma must lie in [0, 1]");
  if (!(alpha > 0.0)) throw RangeError("alpha must be positive");
}

DataPair scientists_sample(const ScientistParams& p, Eigen::Index n, Rng& rng) {
  p.validate();
  if (n < 1) throw RangeError("n must be positive");
  const double sd = std::sqrt(p.alpha);
  // Uniform on [-a, a] has variance a^2 / 3.
  const double half_width = std::sqrt(3.0 * p.alpha);
  auto draw = [&]() {
    if (p.base == BaseDistribution::uniform) return half_width * (2.0 * rng.uniform() - 1.0);
    return sd * rng.normal();
  };
  const double noise_weight = std::sqrt(std::max(0.0, 1.0 - p.gamma * p.gamma));

  DataPair out{Matrix(p.m, n), Matrix(p.m, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p.m; ++j) {
      const double z = draw();
      const double z1 = draw();
      const double z2 = draw();
      if (p.scenario == NoiseScenario::mixture) {
        // Independent selector per day, feature and scientist.
        const bool x_signal = rng.uniform() < p.gamma;
        const bool y_signal = rng.uniform() < p.gamma;
        out.x(j, i) = x_signal ? z : z1;
        out.y(j, i) = y_signal ? z : z2;
      } else {
        out.x(j, i) = p.gamma * z + noise_weight * z1;
        out.y(j, i) = p.gamma * z + noise_weight * z2;
      }
    }
  }
  return out;
}

JointCovariance scientists_covariance(const ScientistParams& p) {
  p.validate();
  const Matrix id = Matrix::Identity(p.m, p.m);
  return JointCovariance(p.alpha * id, p.alpha * id, p.gamma * p.gamma * p.alpha * id);
}

MvnSampler::MvnSampler(const JointCovariance& jc) : m_(jc.dim()) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(jc.block());
  const Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  root_ = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

DataPair MvnSampler::sample(Eigen::Index n, Rng& rng) const {
  if (n < 1) throw RangeError("n must be positive");
  Matrix z(2 * m_, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index r = 0; r < 2 * m_; ++r) z(r, i) = rng.normal();
  }
  const Matrix stacked = root_ * z;
  return DataPair{stacked.topRows(m_), stacked.bottomRows(m_)};
}

DataPair mvn_sample(const JointCovariance& jc, Eigen::Index n, Rng& rng) {
  return MvnSampler(jc).sample(n, rng);
}

JointCovariance identity_pair(Eigen::Index m, double beta) {
  if (std::abs(beta) > 1.0) {
    throw InvariantError("identity pair with |beta| > 1 is not positive semidefinite");
  }
  const Matrix id = Matrix::Identity(m, m);
  return JointCovariance(id, id, beta * id);
}

JointCovariance spiked_diag_pair(Eigen::Index m, double lambda2, double beta) {
  const Matrix d = spiked_diagonal(m, lambda2);
  return JointCovariance(d, d, beta * Matrix::Identity(m, m));
}

Matrix reversal_permutation(Eigen::Index m) {
  return Matrix::Identity(m, m).rowwise().reverse();
}

ReversedPair reversed_pair(Eigen::Index m, double lambda2, double beta) {
  const Matrix d = spiked_diagonal(m, lambda2);
  Matrix w = reversal_permutation(m);
  Matrix cov_y = w * d * w.transpose();
  JointCovariance jc(d, std::move(cov_y), beta * w);
  return ReversedPair{std::move(jc), std::move(w)};
}

}  // namespace incomm
