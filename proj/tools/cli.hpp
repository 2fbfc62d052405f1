#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qspdc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // bad flags, unreadable or malformed input
  kFailure = 2,       // certified failure: a condition is violated or no decomposition exists
  kInconclusive = 3,  // nothing certified either way
};

/// Runs one subcommand. Reports go to --out when given, else to `out`;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspdc::cli
