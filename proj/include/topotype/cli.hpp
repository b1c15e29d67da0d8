#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topotype {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // verification failure or internal error
  kExitUsage = 2,    // bad arguments or inadmissible partition
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topotype
