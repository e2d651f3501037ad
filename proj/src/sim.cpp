#include "incomm/sim.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "incomm/grassmann.hpp"
#include "incomm/pca.hpp"
#include "incomm/procrustes.hpp"

namespace incomm {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::illus1: return "illus1";
    case Experiment::illus2: return "illus2";
    case Experiment::illus3: return "illus3";
    case Experiment::custom: return "custom";
  }
  return "custom";
}

std::string to_string(Method m) { return m == Method::pca ? "pca" : "trivial"; }

Experiment parse_experiment(const std::string& s) {
  if (s == "illus1") return Experiment::illus1;
  if (s == "illus2") return Experiment::illus2;
  if (s == "illus3") return Experiment::illus3;
  if (s == "custom") return Experiment::custom;
  throw RangeError("unknown experiment '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "pca") return Method::pca;
  if (s == "trivial") return Method::trivial;
  throw RangeError("unknown method '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw RangeError("replicates must be >= 1");
  if (m < 1) throw RangeError("m must be positive");
  if (k_values.empty() || n_values.empty() || sweep.empty()) {
    throw RangeError("k, n and sweep lists must be nonempty");
  }
  for (auto k : k_values) {
    if (k < 1 || k > m) throw RangeError("k=" + std::to_string(k) + " must lie in [1, m]");
  }
  for (auto n : n_values) {
    if (n < 2) throw RangeError("n=" + std::to_string(n) + " must be >= 2");
  }
  const std::size_t tuples = sweep.size() * k_values.size() * n_values.size();
  if (tuples > std::numeric_limits<std::uint32_t>::max() ||
      static_cast<std::uint64_t>(replicates) > std::numeric_limits<std::uint32_t>::max()) {
    throw RangeError("sweep too large for 32-bit seed indices");
  }
  // Builds every model once so infeasible sweep values fail before any work.
  for (double v : sweep) (void)make_model(*this, v);
}

ReplicateModel::ReplicateModel(JointCovariance cov, std::optional<Matrix> w,
                               std::optional<ScientistParams> sci)
    : cov_(std::move(cov)), w_(std::move(w)), scientists_(std::move(sci)) {
  if (!scientists_) sampler_.emplace(cov_);
}

ReplicateModel ReplicateModel::gaussian(JointCovariance jc) {
  return ReplicateModel(std::move(jc), std::nullopt, std::nullopt);
}

ReplicateModel ReplicateModel::reversed(ReversedPair rp) {
  return ReplicateModel(std::move(rp.cov), std::move(rp.w), std::nullopt);
}

ReplicateModel ReplicateModel::scientists(ScientistParams p) {
  JointCovariance jc = scientists_covariance(p);
  return ReplicateModel(std::move(jc), std::nullopt, p);
}

DataPair ReplicateModel::sample(Eigen::Index n, Rng& rng) const {
  if (scientists_) return scientists_sample(*scientists_, n, rng);
  return sampler_->sample(n, rng);
}

ReplicateModel make_model(const ExperimentConfig& cfg, double v) {
  switch (cfg.experiment) {
    case Experiment::illus1: return ReplicateModel::gaussian(identity_pair(cfg.m, v));
    case Experiment::illus2:
      return ReplicateModel::gaussian(spiked_diag_pair(cfg.m, v, cfg.beta));
    case Experiment::illus3: return ReplicateModel::reversed(reversed_pair(cfg.m, cfg.lambda2, v));
    case Experiment::custom: {
      ScientistParams p;
      p.m = cfg.m;
      p.gamma = v;
      p.scenario = cfg.scenario;
      p.base = cfg.base;
      p.alpha = cfg.alpha;
      return ReplicateModel::scientists(p);
    }
  }
  throw RangeError("unknown experiment");
}

std::optional<double> ReplicateRecord::discrepancy() const {
  if (!d_sq_corrected || !ok()) return std::nullopt;
  return std::abs(eth_sq - *d_sq_corrected);
}

ReplicateRecord run_replicate(const ReplicateModel& model, Eigen::Index k, Eigen::Index n,
                              Method method, std::uint64_t seed) {
  ReplicateRecord rec;
  rec.method = method;
  rec.m = model.covariance().dim();
  rec.k = k;
  rec.n = n;

  Rng rng(seed);
  const DataPair data = model.sample(n, rng);
  const CenteredData cx = center(data.x);
  const CenteredData cy = center(data.y);
  try {
    const Subspace a = method == Method::pca ? pca_subspace(cx, k) : trivial_subspace(rec.m, k);
    const Subspace b = method == Method::pca ? pca_subspace(cy, k) : trivial_subspace(rec.m, k);
    const auto& cov = model.covariance();

    rec.d_sq = hausdorff_sq(a, b);
    rec.eth_sq = weighted_hausdorff_sq(a, b, cov.cov_xy());
    const auto x = normalize_projected(projector(a), cx.matrix(), k);
    const auto y = normalize_projected(projector(b), cy.matrix(), k);
    rec.eps_sq = fit_error_sq(x, y);
    rec.predicted = predicted_fit_error_sq(rho(cov, k), k, rec.eth_sq);
    rec.residual = residual(rec.eps_sq, rec.predicted);
    if (model.isometry()) rec.d_sq_corrected = hausdorff_sq(a, apply_isometry(*model.isometry(), b));
  } catch (const DegenerateProjection&) {
    rec.status = "failed:degenerate_projection";
  } catch (const DeficientRank&) {
    rec.status = "failed:deficient_rank";
  }
  if (!rec.ok()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.d_sq = rec.eth_sq = rec.eps_sq = rec.predicted = rec.residual = nan;
    rec.d_sq_corrected.reset();
  }
  return rec;
}

std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  struct Tuple {
    std::size_t model;
    Eigen::Index k;
    Eigen::Index n;
  };
  std::vector<ReplicateModel> models;
  models.reserve(cfg.sweep.size());
  for (double v : cfg.sweep) models.push_back(make_model(cfg, v));

  std::vector<Tuple> tuples;
  for (std::size_t s = 0; s < cfg.sweep.size(); ++s) {
    for (auto k : cfg.k_values) {
      for (auto n : cfg.n_values) tuples.push_back({s, k, n});
    }
  }

  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
  const std::size_t total = tuples.size() * reps;
  std::vector<ReplicateRecord> records(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t t = task / reps;
      const std::size_t r = task % reps;
      const auto& tup = tuples[t];
      const auto seed = replicate_seed(cfg.base_seed, static_cast<std::uint32_t>(t),
                                       static_cast<std::uint32_t>(r));
      ReplicateRecord rec = run_replicate(models[tup.model], tup.k, tup.n, cfg.method, seed);
      rec.experiment = cfg.experiment;
      rec.sweep_param = cfg.sweep[tup.model];
      rec.replicate = static_cast<int>(r);
      records[task] = std::move(rec);
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return records;
}

MeanStdev mean_stdev(const std::vector<double>& values) {
  MeanStdev out;
  if (values.empty()) {
    out.mean = out.stdev = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return out;
}

std::vector<SummaryStats> summarize(const std::vector<ReplicateRecord>& records) {
  using Key = std::tuple<int, int, Eigen::Index, Eigen::Index, Eigen::Index, double>;
  std::map<Key, std::size_t> index;
  std::vector<SummaryStats> groups;
  std::vector<std::vector<const ReplicateRecord*>> members;

  for (const auto& r : records) {
    const Key key{static_cast<int>(r.experiment), static_cast<int>(r.method), r.m, r.k, r.n,
                  r.sweep_param};
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) {
      SummaryStats s;
      s.experiment = r.experiment;
      s.method = r.method;
      s.m = r.m;
      s.k = r.k;
      s.n = r.n;
      s.sweep_param = r.sweep_param;
      groups.push_back(s);
      members.emplace_back();
    }
    members[it->second].push_back(&r);
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& s = groups[g];
    std::vector<double> eps, eps_norm, res, abs_res, d;
    const double two_k = 2.0 * static_cast<double>(s.k);
    for (const auto* r : members[g]) {
      if (!r->ok()) {
        ++s.failed;
        continue;
      }
      eps.push_back(r->eps_sq);
      eps_norm.push_back(r->eps_sq / two_k);
      res.push_back(r->residual);
      abs_res.push_back(std::abs(r->residual));
      d.push_back(r->d_sq);
    }
    s.count = static_cast<int>(eps.size());
    s.single_sample = s.count == 1;
    const auto e = mean_stdev(eps);
    const auto en = mean_stdev(eps_norm);
    const auto rs = mean_stdev(res);
    s.mean_eps_sq = e.mean;
    s.stdev_eps_sq = e.stdev;
    s.mean_eps_sq_over_2k = en.mean;
    s.stdev_eps_sq_over_2k = en.stdev;
    s.mean_residual = rs.mean;
    s.stdev_residual = rs.stdev;
    s.mean_abs_residual = mean_stdev(abs_res).mean;
    s.mean_d_sq = mean_stdev(d).mean;
  }
  return groups;
}

}  // namespace incomm
