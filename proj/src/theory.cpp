#include "incomm/theory.hpp"

#include <cmath>
#include <string>

#include "incomm/grassmann.hpp"

namespace incomm {

namespace {

constexpr double kRhoSlack = 1e-10;

void check_k(const JointCovariance& jc, Eigen::Index k) {
  if (k < 1 || k > jc.dim()) {
    throw RangeError("k=" + std::to_string(k) + " must satisfy 1 <= k <= m=" +
                     std::to_string(jc.dim()));
  }
}

double rho_from_blocks(const Matrix& cx, const Matrix& cy, const Matrix& cxy, Eigen::Index k) {
  const double sx = top_singular_sum(cx, k);
  const double sy = top_singular_sum(cy, k);
  if (!(sx > 0.0) || !(sy > 0.0)) throw InvariantError("zero top-k covariance spectrum");
  const double r = top_singular_sum(cxy, k) / std::sqrt(sx * sy);
  if (r > 1.0 + kRhoSlack) {
    throw InvariantError("rho=" + std::to_string(r) + " exceeds 1; covariance is not PSD");
  }
  return r > 1.0 ? 1.0 : r;
}

}  // namespace

double rho(const JointCovariance& jc, Eigen::Index k) {
  check_k(jc, k);
  return rho_from_blocks(jc.cov_x(), jc.cov_y(), jc.cov_xy(), k);
}

double delta(const JointCovariance& jc, Eigen::Index k) {
  check_k(jc, k);
  const double kk = static_cast<double>(k);
  const double mx = top_singular_sum(jc.cov_x(), k) / kk;
  const double my = top_singular_sum(jc.cov_y(), k) / kk;
  if (!(mx > 0.0) || !(my > 0.0)) throw InvariantError("zero top-k covariance spectrum");
  return 1.0 / (mx * my);
}

TheoryParams theory_params(const JointCovariance& jc, Eigen::Index k) {
  return TheoryParams{rho(jc, k), delta(jc, k), k,
                      top_singular_sum(jc.cov_x(), k) / static_cast<double>(k)};
}

double rho_hat(const Matrix& sample_cov_x, const Matrix& sample_cov_y,
               const Matrix& sample_cross_cov, Eigen::Index k) {
  const auto m = sample_cov_x.rows();
  if (sample_cov_y.rows() != m || sample_cross_cov.rows() != m || sample_cross_cov.cols() != m) {
    throw DimensionError("sample covariance blocks must all be m x m");
  }
  if (k < 1 || k > m) throw RangeError("k out of range");
  return rho_from_blocks(sample_cov_x, sample_cov_y, sample_cross_cov, k);
}

double predicted_fit_error_sq(double rho, Eigen::Index k, double eth_sq) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw RangeError("rho must lie in [0, 1]");
  if (k < 1) throw RangeError("k must be positive");
  const double two_k = 2.0 * static_cast<double>(k);
  if (!(eth_sq >= 0.0 && eth_sq <= two_k)) throw RangeError("eth_sq must lie in [0, 2k]");
  return (1.0 - rho) * two_k + rho * eth_sq;
}

double gamma_to_rho(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw RangeError("gamma must lie in [0, 1]");
  return gamma * gamma;
}

}  // namespace incomm
