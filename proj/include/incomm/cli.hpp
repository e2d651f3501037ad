#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incomm::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   // bad flags, bad input files, unwritable output
inline constexpr int kExitFailed = 3;  // deficient rank / failed replicates

/// Entry point behind the `incomm` executable. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incomm::cli
