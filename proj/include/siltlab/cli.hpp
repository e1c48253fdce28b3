#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace siltlab {

enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitInput = 2, kExitIndeterminate = 3 };

/// Runs the command line (without the program name). Everything user-facing
/// is written to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace siltlab
