#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "incomm/sim.hpp"

namespace incomm {

/// Records CSV column order. `discrepancy` is |eth2 - d2_corrected| and, like
/// d2_corrected, is empty outside the reversed-model experiment.
inline const std::vector<std::string> kRecordColumns{
    "experiment", "method",   "m",        "k",         "n",
    "sweep_param", "replicate", "d2",     "eth2",      "eps2",
    "predicted",  "residual", "d2_corrected", "status", "discrepancy"};

/// %.12g; NaN becomes the empty string.
std::string format_real(double v);

/// Value rounded to 12 significant digits.
double round12(double v);

void write_records_csv(std::ostream& out, const std::vector<ReplicateRecord>& records);
std::vector<ReplicateRecord> read_records_csv(std::istream& in);

/// Extra per-group fields echoed into the summary JSON.
struct SummaryContext {
  std::uint64_t seed = 42;
  /// rho per group, aligned with the summary vector; empty to omit.
  std::vector<double> rho;
};

nlohmann::json summary_json(const std::vector<SummaryStats>& stats, const SummaryContext& ctx);

/// Headerless numeric CSV; one matrix row per line.
Matrix read_matrix_csv(std::istream& in);

}  // namespace incomm
