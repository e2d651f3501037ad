#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incomm/model.hpp"
#include "incomm/theory.hpp"

namespace incomm {

enum class Experiment { illus1, illus2, illus3, custom };
enum class Method { pca, trivial };

std::string to_string(Experiment e);
std::string to_string(Method m);
Experiment parse_experiment(const std::string& s);
Method parse_method(const std::string& s);

/// A sweep over sweep x k_values x n_values, `replicates` draws each.
///
/// The sweep parameter depends on the experiment:
///   illus1  beta in Cov(X,Y) = beta I_m, identity marginals
///   illus2  lambda2, the second diagonal entry of diag(1, lambda2, .7, ...);
///           Cov(X,Y) = beta I_m
///   illus3  beta in Cov(X,Y) = beta W for the reversed model at `lambda2`
///   custom  gamma of the two-scientists model (`scenario`, `base`, `alpha`)
struct ExperimentConfig {
  Experiment experiment = Experiment::illus1;
  Eigen::Index m = 6;
  std::vector<Eigen::Index> k_values{2};
  std::vector<Eigen::Index> n_values{1000};
  std::vector<double> sweep{0.5};
  int replicates = 200;
  std::uint64_t base_seed = 42;
  Method method = Method::pca;
  double beta = 0.6;
  double lambda2 = 0.7;
  NoiseScenario scenario = NoiseScenario::linear;
  BaseDistribution base = BaseDistribution::standard_normal;
  double alpha = 1.0;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws RangeError / InvariantError on an unusable configuration.
  void validate() const;
};

/// The generative model and true covariance behind one sweep point.
class ReplicateModel {
 public:
  static ReplicateModel gaussian(JointCovariance jc);
  static ReplicateModel reversed(ReversedPair rp);
  static ReplicateModel scientists(ScientistParams p);

  const JointCovariance& covariance() const { return cov_; }
  /// Isometry relating Y's coordinates to X's (reversed model only).
  const std::optional<Matrix>& isometry() const { return w_; }

  DataPair sample(Eigen::Index n, Rng& rng) const;

 private:
  ReplicateModel(JointCovariance cov, std::optional<Matrix> w,
                 std::optional<ScientistParams> sci);

  JointCovariance cov_;
  std::optional<Matrix> w_;
  std::optional<ScientistParams> scientists_;
  std::optional<MvnSampler> sampler_;
};

ReplicateModel make_model(const ExperimentConfig& cfg, double sweep_value);

struct ReplicateRecord {
  Experiment experiment = Experiment::custom;
  Method method = Method::pca;
  Eigen::Index m = 0;
  Eigen::Index k = 0;
  Eigen::Index n = 0;
  double sweep_param = 0.0;
  int replicate = 0;
  double d_sq = 0.0;
  double eth_sq = 0.0;
  double eps_sq = 0.0;
  double predicted = 0.0;
  double residual = 0.0;
  std::optional<double> d_sq_corrected;  // d^2(A, W B), reversed model only
  std::string status = "ok";             // "ok" or "failed:<reason>"

  bool ok() const { return status == "ok"; }
  /// |eth_sq - d_sq_corrected| when the corrected distance exists.
  std::optional<double> discrepancy() const;
};

/// One replicate: sample, center, choose subspaces, and evaluate d^2, the
/// weighted distance (true Cov(X,Y)), the Procrustes error and its predicted
/// limit. Degenerate projections and rank deficiency yield a failed record.
ReplicateRecord run_replicate(const ReplicateModel& model, Eigen::Index k, Eigen::Index n,
                              Method method, std::uint64_t seed);

/// Records ordered by (sweep, k, n, replicate) whatever the thread count.
std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& cfg);

struct SummaryStats {
  Experiment experiment = Experiment::custom;
  Method method = Method::pca;
  Eigen::Index m = 0;
  Eigen::Index k = 0;
  Eigen::Index n = 0;
  double sweep_param = 0.0;

  int count = 0;   // successful replicates
  int failed = 0;  // excluded from the statistics
  double mean_eps_sq = 0.0;
  double stdev_eps_sq = 0.0;
  double mean_eps_sq_over_2k = 0.0;
  double stdev_eps_sq_over_2k = 0.0;
  double mean_residual = 0.0;
  double stdev_residual = 0.0;
  double mean_abs_residual = 0.0;
  double mean_d_sq = 0.0;
  bool single_sample = false;  // stdev forced to 0
};

/// Per-group mean and (n-1)-denominator standard deviation, one group per
/// distinct (experiment, method, m, k, n, sweep_param), in first-seen order.
std::vector<SummaryStats> summarize(const std::vector<ReplicateRecord>& records);

struct MeanStdev {
  double mean = 0.0;
  double stdev = 0.0;
};

MeanStdev mean_stdev(const std::vector<double>& values);

}  // namespace incomm
