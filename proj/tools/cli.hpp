#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dumbwaiter::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kUnreachableTarget = 3,
  kInfeasibleFleet = 4,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dumbwaiter::cli
