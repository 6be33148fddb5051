#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abfrac::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kDomainError = 2,
  kReferenceUnavailable = 3,
  kSolverBreakdown = 4,
};

/// Runs the command line `args` (program name excluded) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abfrac::cli
