#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rstar {

// Exit codes of the rstar tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitNumerical = 4,
  kExitVerification = 5,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rstar
