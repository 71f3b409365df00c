#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qth {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitNotAccepted = 1, kExitInput = 2, kExitFailure = 3 };

/// Runs qthclosure with `args` (program name excluded), writing results to
/// `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qth
