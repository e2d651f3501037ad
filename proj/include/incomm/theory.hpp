#pragma once

#include "incomm/model.hpp"

namespace incomm {

/// Limiting-line parameters for one covariance model and projection dimension.
struct TheoryParams {
  double rho;
  double delta;
  Eigen::Index k;
  double alpha_prime;  // mean of the k largest singular values of Cov(X)
};

/// sum_{j<=k} s_j(Cov(X,Y)) / sqrt(sum_{j<=k} s_j(Cov(X)) * sum_{j<=k} s_j(Cov(Y))).
/// Values overshooting [0, 1] by less than 1e-10 are clamped; larger
/// overshoots throw InvariantError.
double rho(const JointCovariance& jc, Eigen::Index k);

/// 1 / (mean top-k singular value of Cov(X) * mean top-k singular value of Cov(Y)).
double delta(const JointCovariance& jc, Eigen::Index k);

TheoryParams theory_params(const JointCovariance& jc, Eigen::Index k);

/// Plug-in estimate of rho from sample covariances. Not the theorem's rho.
double rho_hat(const Matrix& sample_cov_x, const Matrix& sample_cov_y,
               const Matrix& sample_cross_cov, Eigen::Index k);

/// (1 - rho) 2k + rho eth_sq
double predicted_fit_error_sq(double rho, Eigen::Index k, double eth_sq);

inline double residual(double eps_sq, double predicted) { return eps_sq - predicted; }

/// rho for the two-scientists model: gamma^2.
double gamma_to_rho(double gamma);

}  // namespace incomm
