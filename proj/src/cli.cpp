#include "incomm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

#include "incomm/grassmann.hpp"
#include "incomm/io.hpp"
#include "incomm/pca.hpp"
#include "incomm/procrustes.hpp"
#include "incomm/sim.hpp"
#include "incomm/theory.hpp"

namespace incomm::cli {

namespace {

struct RunFlags {
  ExperimentConfig cfg;
  std::string method = "pca";
  std::string out_path;
  std::string summary_path;
  bool full_scale = false;
  int full_scale_reps = 1000;
  bool n_sweep = false;  // illus2 only
  std::string scenario = "linear";
  std::string base = "normal";
};

void add_run_flags(CLI::App* cmd, RunFlags& f, const std::string& sweep_flag,
                   const std::string& sweep_help) {
  cmd->add_option("--m", f.cfg.m, "ambient dimension")->capture_default_str();
  cmd->add_option("--k", f.cfg.k_values, "projection dimension(s)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--n", f.cfg.n_values, "observation count(s)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option(sweep_flag, f.cfg.sweep, sweep_help)->delimiter(',')->capture_default_str();
  cmd->add_option("--reps", f.cfg.replicates, "Monte Carlo replicates per parameter tuple")
      ->capture_default_str();
  cmd->add_option("--seed", f.cfg.base_seed, "base seed")->capture_default_str();
  cmd->add_option("--method", f.method, "subspace choice")
      ->check(CLI::IsMember({"pca", "trivial"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out_path, "records CSV path")->capture_default_str();
  cmd->add_option("--summary", f.summary_path, "summary JSON path")->capture_default_str();
  cmd->add_option("--threads", f.cfg.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd->add_flag("--full-scale", f.full_scale, "use the original replicate counts");
}

std::map<double, JointCovariance> covariances_by_sweep(const ExperimentConfig& cfg) {
  std::map<double, JointCovariance> out;
  for (double v : cfg.sweep) out.emplace(v, make_model(cfg, v).covariance());
  return out;
}

const char* sweep_name(Experiment e) {
  switch (e) {
    case Experiment::illus1: return "beta";
    case Experiment::illus2: return "lambda2";
    case Experiment::illus3: return "beta";
    case Experiment::custom: return "gamma";
  }
  return "sweep";
}

int run_experiment_command(RunFlags& f, std::ostream& out, std::ostream& err) {
  auto& cfg = f.cfg;
  if (f.full_scale) cfg.replicates = f.full_scale_reps;
  try {
    cfg.method = parse_method(f.method);
    if (cfg.experiment == Experiment::custom) {
      cfg.scenario = f.scenario == "mixture" ? NoiseScenario::mixture : NoiseScenario::linear;
      cfg.base = f.base == "uniform" ? BaseDistribution::uniform
                                     : BaseDistribution::standard_normal;
    }
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string stem = to_string(cfg.experiment);
  if (f.out_path.empty()) f.out_path = stem + "_records.csv";
  if (f.summary_path.empty()) f.summary_path = stem + "_summary.json";
  std::ofstream records_file(f.out_path);
  if (!records_file) {
    err << "error: cannot write records to '" << f.out_path << "'\n";
    return kExitUsage;
  }
  std::ofstream summary_file(f.summary_path);
  if (!summary_file) {
    err << "error: cannot write summary to '" << f.summary_path << "'\n";
    return kExitUsage;
  }

  const auto records = run_experiment(cfg);
  const auto stats = summarize(records);
  const auto covs = covariances_by_sweep(cfg);

  SummaryContext ctx;
  ctx.seed = cfg.base_seed;
  for (const auto& s : stats) ctx.rho.push_back(rho(covs.at(s.sweep_param), s.k));

  write_records_csv(records_file, records);
  summary_file << std::setw(2) << summary_json(stats, ctx) << '\n';
  records_file.close();
  summary_file.close();
  if (!records_file || !summary_file) {
    err << "error: failed while writing output files\n";
    return kExitUsage;
  }

  int failed = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    failed += s.failed;
    out << stem << ' ' << to_string(s.method) << ' ' << sweep_name(cfg.experiment) << '='
        << format_real(s.sweep_param) << " k=" << s.k << " n=" << s.n
        << " rho=" << format_real(ctx.rho[i]) << " mean_eps2=" << format_real(s.mean_eps_sq)
        << " sd_eps2=" << format_real(s.stdev_eps_sq)
        << " mean_eps2/2k=" << format_real(s.mean_eps_sq_over_2k)
        << " sd_eps2/2k=" << format_real(s.stdev_eps_sq_over_2k)
        << " sd_residual=" << format_real(s.stdev_residual) << " count=" << s.count
        << " failed=" << s.failed << '\n';
  }
  if (cfg.experiment == Experiment::illus3) {
    double worst = 0.0;
    for (const auto& r : records) worst = std::max(worst, r.discrepancy().value_or(0.0));
    out << "max |eth2 - d2(A, W B)| = " << format_real(worst) << '\n';
  }
  out << "seed=" << cfg.base_seed << " records=" << records.size() << " -> " << f.out_path
      << ", " << f.summary_path << '\n';
  if (failed > 0) {
    err << "warning: " << failed << " replicate(s) failed and were excluded\n";
    return kExitFailed;
  }
  return kExitOk;
}

struct ComputeFlags {
  std::string x_path;
  std::string y_path;
  std::string cross_cov_path;
  Eigen::Index k = 2;
  std::string method = "pca";
};

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  return read_matrix_csv(in);
}

int run_compute(const ComputeFlags& f, std::ostream& out, std::ostream& err) {
  Matrix x, y;
  std::optional<Matrix> cross;
  try {
    x = load_matrix(f.x_path);
    y = load_matrix(f.y_path);
    if (!f.cross_cov_path.empty()) cross = load_matrix(f.cross_cov_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    err << "error: X is " << x.rows() << "x" << x.cols() << " but Y is " << y.rows() << "x"
        << y.cols() << '\n';
    return kExitUsage;
  }
  const auto m = x.rows();
  if (f.k < 1 || f.k > m) {
    err << "error: k=" << f.k << " out of range: must satisfy 1 <= k <= m=" << m << '\n';
    return kExitUsage;
  }
  if (x.cols() < 2) {
    err << "error: need at least 2 observations\n";
    return kExitUsage;
  }
  if (cross && (cross->rows() != m || cross->cols() != m)) {
    err << "error: cross-covariance must be " << m << "x" << m << '\n';
    return kExitUsage;
  }

  try {
    const auto cx = center(x);
    const auto cy = center(y);
    const bool pca = f.method == "pca";
    const Subspace a = pca ? pca_subspace(cx, f.k) : trivial_subspace(m, f.k);
    const Subspace b = pca ? pca_subspace(cy, f.k) : trivial_subspace(m, f.k);
    const auto xn = normalize_projected(projector(a), cx.matrix(), f.k);
    const auto yn = normalize_projected(projector(b), cy.matrix(), f.k);

    nlohmann::json j;
    j["m"] = m;
    j["n"] = x.cols();
    j["k"] = f.k;
    j["method"] = f.method;
    j["eps2"] = round12(fit_error_sq(xn, yn));
    j["d2"] = round12(hausdorff_sq(a, b));
    j["rho_hat"] = round12(rho_hat(cx.sample_covariance(), cy.sample_covariance(),
                                   cx.sample_cross_covariance(cy), f.k));
    if (cross) j["eth2"] = round12(weighted_hausdorff_sq(a, b, *cross));
    out << j.dump(2) << '\n';
  } catch (const DeficientRank& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const DegenerateProjection& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int run_summarize(const std::string& in_path, const std::string& summary_path, std::uint64_t seed,
                  std::ostream& out, std::ostream& err) {
  std::vector<ReplicateRecord> records;
  try {
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("cannot read '" + in_path + "'");
    records = read_records_csv(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  SummaryContext ctx;
  ctx.seed = seed;
  const auto j = summary_json(summarize(records), ctx);
  if (summary_path.empty()) {
    out << std::setw(2) << j << '\n';
    return kExitOk;
  }
  std::ofstream file(summary_path);
  if (!file) {
    err << "error: cannot write summary to '" << summary_path << "'\n";
    return kExitUsage;
  }
  file << std::setw(2) << j << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Procrustean fitting error vs. Grassmannian distance: Monte Carlo experiments"};
  app.require_subcommand(1);

  RunFlags illus1;
  illus1.cfg.experiment = Experiment::illus1;
  illus1.cfg.m = 6;
  illus1.cfg.k_values = {2};
  illus1.cfg.n_values = {1000, 10000};
  illus1.cfg.sweep = {0, .1, .2, .3, .4, .5, .6, .7, .8, .9, .99};
  illus1.full_scale_reps = 1000;
  auto* c1 = app.add_subcommand("illus1", "identity marginals, Cov(X,Y) = beta I");
  add_run_flags(c1, illus1, "--beta", "cross-covariance scale(s)");

  RunFlags illus2;
  illus2.cfg.experiment = Experiment::illus2;
  illus2.cfg.m = 20;
  illus2.cfg.k_values = {1, 2, 10};
  illus2.cfg.n_values = {10000};
  illus2.cfg.sweep = {.7, .71, .72, .73, .74, .75};
  illus2.cfg.beta = 0.6;
  illus2.full_scale_reps = 10000;
  auto* c2 = app.add_subcommand("illus2", "spiked diagonal marginals, Cov(X,Y) = beta I");
  add_run_flags(c2, illus2, "--lambda2", "second diagonal entry(ies) of Cov(X)");
  c2->add_option("--beta", illus2.cfg.beta, "cross-covariance scale")->capture_default_str();
  c2->add_flag("--n-sweep", illus2.n_sweep,
               "k=2, lambda2=.7, n in {10,100,1000,10000} (overrides --k/--n/--lambda2)");

  RunFlags illus3;
  illus3.cfg.experiment = Experiment::illus3;
  illus3.cfg.m = 20;
  illus3.cfg.k_values = {1, 2, 10};
  illus3.cfg.n_values = {10000};
  illus3.cfg.sweep = {0.6};
  illus3.cfg.lambda2 = 0.7;
  illus3.full_scale_reps = 10000;
  auto* c3 = app.add_subcommand("illus3", "spiked model with Y's coordinates reversed");
  add_run_flags(c3, illus3, "--beta", "cross-covariance scale(s), Cov(X,Y) = beta W");
  c3->add_option("--lambda2", illus3.cfg.lambda2, "second diagonal entry of Cov(X)")
      ->capture_default_str();

  RunFlags custom;
  custom.cfg.experiment = Experiment::custom;
  custom.cfg.m = 6;
  custom.cfg.k_values = {2};
  custom.cfg.n_values = {1000};
  custom.cfg.sweep = {0, .5, .8, 1};
  custom.full_scale_reps = 1000;
  auto* c4 = app.add_subcommand("custom", "two-scientists model swept over gamma");
  add_run_flags(c4, custom, "--gamma", "measurement accuracy value(s) in [0,1]");
  c4->add_option("--scenario", custom.scenario, "noise model")
      ->check(CLI::IsMember({"linear", "mixture"}))
      ->capture_default_str();
  c4->add_option("--base", custom.base, "distribution of Z, Z', Z''")
      ->check(CLI::IsMember({"normal", "uniform"}))
      ->capture_default_str();
  c4->add_option("--alpha", custom.cfg.alpha, "variance of the base distribution")
      ->capture_default_str();

  ComputeFlags compute;
  auto* c5 = app.add_subcommand("compute", "diagnostics for two user-supplied data matrices");
  c5->add_option("--x", compute.x_path, "X CSV (rows = features, columns = observations)")
      ->required();
  c5->add_option("--y", compute.y_path, "Y CSV, same shape as X")->required();
  c5->add_option("--k", compute.k, "projection dimension")->capture_default_str();
  c5->add_option("--cross-cov", compute.cross_cov_path, "m x m Cov(X,Y) CSV (enables eth2)");
  c5->add_option("--method", compute.method, "subspace choice")
      ->check(CLI::IsMember({"pca", "trivial"}))
      ->capture_default_str();

  std::string sum_in;
  std::string sum_out;
  std::uint64_t sum_seed = 42;
  auto* c6 = app.add_subcommand("summarize", "recompute summary statistics from a records CSV");
  c6->add_option("--in", sum_in, "records CSV")->required();
  c6->add_option("--summary", sum_out, "summary JSON path (stdout when omitted)");
  c6->add_option("--seed", sum_seed, "seed to echo into the summary")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (c1->parsed()) return run_experiment_command(illus1, out, err);
  if (c2->parsed()) {
    if (illus2.n_sweep) {
      illus2.cfg.k_values = {2};
      illus2.cfg.n_values = {10, 100, 1000, 10000};
      illus2.cfg.sweep = {0.7};
      illus2.full_scale_reps = 2000;
    }
    return run_experiment_command(illus2, out, err);
  }
  if (c3->parsed()) return run_experiment_command(illus3, out, err);
  if (c4->parsed()) return run_experiment_command(custom, out, err);
  if (c5->parsed()) return run_compute(compute, out, err);
  return run_summarize(sum_in, sum_out, sum_seed, out, err);
}

}  // namespace incomm::cli
