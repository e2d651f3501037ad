#include <doctest.h>

#include <cmath>

#include "incomm/rng.hpp"
#include "incomm/sim.hpp"

using namespace incomm;

namespace {

bool same_records(const std::vector<ReplicateRecord>& a, const std::vector<ReplicateRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.sweep_param != y.sweep_param || x.k != y.k || x.n != y.n || x.replicate != y.replicate ||
        x.d_sq != y.d_sq || x.eth_sq != y.eth_sq || x.eps_sq != y.eps_sq ||
        x.predicted != y.predicted || x.residual != y.residual ||
        x.d_sq_corrected != y.d_sq_corrected || x.status != y.status) {
      return false;
    }
  }
  return true;
}

ExperimentConfig small_illus1() {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::illus1;
  cfg.m = 6;
  cfg.k_values = {2};
  cfg.n_values = {200};
  cfg.sweep = {0.3, 0.9};
  cfg.replicates = 3;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("splitmix64 finalizer matches the reference generator") {
  // First output of SplitMix64 seeded with 0: mix(0 + golden gamma).
  CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
  CHECK(replicate_seed(42, 0, 0) == splitmix64_mix(42));
  CHECK(replicate_seed(42, 1, 2) == splitmix64_mix(42ULL ^ ((1ULL << 32) | 2ULL)));
  CHECK(replicate_seed(42, 1, 0) != replicate_seed(42, 0, 1));
}

TEST_CASE("trivial method has zero subspace distance and predicted (1 - rho) 2k") {
  const auto model = ReplicateModel::gaussian(identity_pair(6, 0.5));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = run_replicate(model, 2, 500, Method::trivial, seed);
    REQUIRE(r.ok());
    CHECK(r.d_sq == 0.0);
    CHECK(r.eth_sq == 0.0);
    CHECK(r.predicted == (1.0 - rho(model.covariance(), 2)) * 4.0);
    CHECK(r.residual == r.eps_sq - r.predicted);
  }
}

TEST_CASE("identity model: weighted distance equals d^2") {
  const auto model = ReplicateModel::gaussian(identity_pair(6, 0.7));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_replicate(model, 2, 300, Method::pca, seed);
    CHECK(std::abs(r.eth_sq - r.d_sq) < 1e-12);
    CHECK_FALSE(r.d_sq_corrected.has_value());
  }
}

TEST_CASE("reversed model: isometry-corrected distance equals the weighted distance") {
  const auto model = ReplicateModel::reversed(reversed_pair(20, 0.7, 0.6));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_replicate(model, 2, 400, Method::pca, seed);
    REQUIRE(r.d_sq_corrected.has_value());
    CHECK(*r.discrepancy() < 1e-9);
  }
}

TEST_CASE("records stay in range") {
  for (auto method : {Method::pca, Method::trivial}) {
    auto cfg = small_illus1();
    cfg.method = method;
    cfg.sweep = {0.0, 0.5, 0.99};
    cfg.k_values = {1, 2, 6};
    cfg.n_values = {20, 200};
    for (const auto& r : run_experiment(cfg)) {
      REQUIRE(r.ok());
      const double two_k = 2.0 * r.k;
      CHECK(r.eps_sq >= 0.0);
      CHECK(r.eps_sq <= two_k);
      CHECK(r.d_sq >= 0.0);
      CHECK(r.d_sq <= two_k);
      CHECK(r.eth_sq >= 0.0);
      CHECK(r.eth_sq <= two_k);
      CHECK(r.residual == r.eps_sq - r.predicted);
    }
  }
}

TEST_CASE("run_experiment counts, ordering and determinism") {
  auto cfg = small_illus1();
  const auto a = run_experiment(cfg);
  REQUIRE(a.size() == 6);
  CHECK(a[0].sweep_param == 0.3);
  CHECK(a[2].replicate == 2);
  CHECK(a[3].sweep_param == 0.9);
  CHECK(a[3].replicate == 0);
  CHECK(same_records(a, run_experiment(cfg)));

  cfg.threads = 8;
  CHECK(same_records(a, run_experiment(cfg)));

  cfg.base_seed = 43;
  CHECK_FALSE(same_records(a, run_experiment(cfg)));
}

TEST_CASE("parallel execution matches serial execution on a larger sweep") {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::illus3;
  cfg.m = 10;
  cfg.k_values = {1, 3};
  cfg.n_values = {50, 100};
  cfg.sweep = {0.6};
  cfg.replicates = 5;
  cfg.threads = 1;
  const auto serial = run_experiment(cfg);
  cfg.threads = 8;
  CHECK(same_records(serial, run_experiment(cfg)));
}

TEST_CASE("configuration errors surface before any work") {
  auto cfg = small_illus1();
  cfg.replicates = 0;
  CHECK_THROWS_AS(run_experiment(cfg), RangeError);
  cfg = small_illus1();
  cfg.k_values = {7};
  CHECK_THROWS_AS(run_experiment(cfg), RangeError);
  cfg = small_illus1();
  cfg.sweep = {1.5};
  CHECK_THROWS_AS(run_experiment(cfg), InvariantError);
  cfg = small_illus1();
  cfg.n_values = {1};
  CHECK_THROWS_AS(run_experiment(cfg), RangeError);
}

TEST_CASE("rank-deficient replicates are recorded as failed and excluded") {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::illus2;
  cfg.m = 20;
  cfg.k_values = {2, 10};
  cfg.n_values = {10};
  cfg.sweep = {0.7};
  cfg.replicates = 4;
  cfg.threads = 1;
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 8);
  for (int i = 0; i < 4; ++i) CHECK(records[i].ok());
  for (int i = 4; i < 8; ++i) {
    CHECK(records[i].status == "failed:deficient_rank");
    CHECK(std::isnan(records[i].eps_sq));
  }
  const auto stats = summarize(records);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].count == 4);
  CHECK(stats[0].failed == 0);
  CHECK(stats[1].count == 0);
  CHECK(stats[1].failed == 4);
}

TEST_CASE("two-scientists experiment") {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::custom;
  cfg.m = 5;
  cfg.k_values = {2};
  cfg.n_values = {2000};
  cfg.sweep = {1.0, 0.6};
  cfg.scenario = NoiseScenario::mixture;
  cfg.replicates = 5;
  const auto records = run_experiment(cfg);
  for (int i = 0; i < 5; ++i) {
    CHECK(records[i].eps_sq < 1e-9);
    CHECK(records[i].predicted == doctest::Approx(records[i].eth_sq));
  }
  const auto stats = summarize(records);
  // gamma = .6 means rho = .36 and a predicted error of at least .64 * 2k.
  CHECK(stats[1].mean_eps_sq > 0.6 * 4.0);
}

TEST_CASE("summarize: means and n-1 standard deviations") {
  auto make = [](double eps, double res) {
    ReplicateRecord r;
    r.k = 1;
    r.eps_sq = eps;
    r.residual = res;
    return r;
  };
  const auto s = summarize({make(1.0, 0.5), make(3.0, -0.5)});
  REQUIRE(s.size() == 1);
  CHECK(s[0].count == 2);
  CHECK(s[0].mean_eps_sq == 2.0);
  CHECK(s[0].stdev_eps_sq == doctest::Approx(std::sqrt(2.0)));
  CHECK(s[0].mean_eps_sq_over_2k == 1.0);
  CHECK(s[0].stdev_eps_sq_over_2k == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(s[0].mean_residual == 0.0);
  CHECK(s[0].mean_abs_residual == 0.5);

  const auto same = summarize({make(0.7, 0.0), make(0.7, 0.0), make(0.7, 0.0)});
  CHECK(same[0].mean_eps_sq == doctest::Approx(0.7));
  CHECK(same[0].stdev_eps_sq == doctest::Approx(0.0));

  const auto single = summarize({make(0.7, 0.1)});
  CHECK(single[0].single_sample);
  CHECK(single[0].stdev_eps_sq == 0.0);
}

TEST_CASE("summarize groups by parameter tuple in first-seen order") {
  auto cfg = small_illus1();
  cfg.k_values = {1, 2};
  const auto stats = summarize(run_experiment(cfg));
  REQUIRE(stats.size() == 4);
  CHECK(stats[0].sweep_param == 0.3);
  CHECK(stats[0].k == 1);
  CHECK(stats[1].k == 2);
  CHECK(stats[2].sweep_param == 0.9);
  for (const auto& s : stats) CHECK(s.count == 3);
}

TEST_CASE("parse helpers") {
  CHECK(parse_experiment("illus3") == Experiment::illus3);
  CHECK(parse_method("trivial") == Method::trivial);
  CHECK_THROWS_AS(parse_method("ica"), RangeError);
  CHECK(to_string(Experiment::custom) == "custom");
}
