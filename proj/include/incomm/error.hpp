#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace incomm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Inputs whose shapes do not fit together (subspaces of different
// dimension, data matrices of different size, ...).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A parameter outside its admissible range (k > m, |beta| > 1, gamma < 0, ...).
class RangeError : public std::invalid_argument {
 public:
  explicit RangeError(const std::string& what) : std::invalid_argument(what) {}
};

// A matrix that was required to satisfy a structural invariant does not
// (non-orthonormal basis, non-orthogonal isometry, non-PSD covariance).
class InvariantError : public std::invalid_argument {
 public:
  explicit InvariantError(const std::string& what) : std::invalid_argument(what) {}
};

// The projected data has zero Frobenius norm, so the normalizing scale is undefined.
class DegenerateProjection : public std::runtime_error {
 public:
  DegenerateProjection() : std::runtime_error("degenerate projection") {}
};

// Fewer than k nonzero singular values in the centered data.
class DeficientRank : public std::runtime_error {
 public:
  explicit DeficientRank(const std::string& detail)
      : std::runtime_error("deficient rank for requested dimension: " + detail) {}
};

}  // namespace incomm
