#include "incomm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace incomm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("cannot parse '" + s + "' as a number (" + what + ")");
  }
  return v;
}

long long parse_int(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("cannot parse '" + s + "' as an integer (" + what + ")");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

void write_records_csv(std::ostream& out, const std::vector<ReplicateRecord>& records) {
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) {
    out << (i ? "," : "") << kRecordColumns[i];
  }
  out << '\n';
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : records) {
    out << to_string(r.experiment) << ',' << to_string(r.method) << ',' << r.m << ',' << r.k
        << ',' << r.n << ',' << format_real(r.sweep_param) << ',' << r.replicate << ','
        << format_real(r.d_sq) << ',' << format_real(r.eth_sq) << ',' << format_real(r.eps_sq)
        << ',' << format_real(r.predicted) << ',' << format_real(r.residual) << ','
        << format_real(r.d_sq_corrected.value_or(nan)) << ',' << r.status << ','
        << format_real(r.discrepancy().value_or(nan)) << '\n';
  }
}

std::vector<ReplicateRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("records CSV is empty");
  const auto header = split_csv_line(trim(line));
  if (header.size() < 14 ||
      !std::equal(header.begin(), header.begin() + 14, kRecordColumns.begin())) {
    throw std::invalid_argument("records CSV header does not match the expected schema");
  }
  std::vector<ReplicateRecord> out;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() < 14) throw std::invalid_argument("short records CSV row: " + line);
    ReplicateRecord r;
    r.experiment = parse_experiment(f[0]);
    r.method = parse_method(f[1]);
    r.m = parse_int(f[2], "m");
    r.k = parse_int(f[3], "k");
    r.n = parse_int(f[4], "n");
    r.sweep_param = parse_real(f[5], "sweep_param");
    r.replicate = static_cast<int>(parse_int(f[6], "replicate"));
    r.d_sq = parse_real(f[7], "d2");
    r.eth_sq = parse_real(f[8], "eth2");
    r.eps_sq = parse_real(f[9], "eps2");
    r.predicted = parse_real(f[10], "predicted");
    r.residual = parse_real(f[11], "residual");
    const double corrected = parse_real(f[12], "d2_corrected");
    if (!std::isnan(corrected)) r.d_sq_corrected = corrected;
    r.status = trim(f[13]);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json summary_json(const std::vector<SummaryStats>& stats, const SummaryContext& ctx) {
  auto num = [](double v) -> nlohmann::json {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
  };
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    nlohmann::json o;
    o["experiment"] = to_string(s.experiment);
    o["method"] = to_string(s.method);
    o["m"] = s.m;
    o["k"] = s.k;
    o["n"] = s.n;
    o["sweep_param"] = num(s.sweep_param);
    o["count"] = s.count;
    o["failed"] = s.failed;
    o["mean_eps2"] = num(s.mean_eps_sq);
    o["stdev_eps2"] = num(s.stdev_eps_sq);
    o["mean_eps2_over_2k"] = num(s.mean_eps_sq_over_2k);
    o["stdev_eps2_over_2k"] = num(s.stdev_eps_sq_over_2k);
    o["mean_residual"] = num(s.mean_residual);
    o["stdev_residual"] = num(s.stdev_residual);
    o["mean_abs_residual"] = num(s.mean_abs_residual);
    o["mean_d2"] = num(s.mean_d_sq);
    o["single_sample_warning"] = s.single_sample;
    o["seed"] = ctx.seed;
    if (i < ctx.rho.size()) {
      // Limiting line eps2 = (1 - rho) 2k + rho * eth2.
      const double two_k = 2.0 * static_cast<double>(s.k);
      o["rho"] = num(ctx.rho[i]);
      o["reference_intercept"] = num((1.0 - ctx.rho[i]) * two_k);
      o["reference_slope"] = num(ctx.rho[i]);
    }
    arr.push_back(std::move(o));
  }
  return arr;
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : split_csv_line(line)) {
      const double v = parse_real(f, "matrix entry");
      if (std::isnan(v)) throw std::invalid_argument("empty matrix entry");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("ragged matrix CSV");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix CSV is empty");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace incomm
