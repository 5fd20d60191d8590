#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qma {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFalse = 1, kExitUsage = 2, kExitCap = 3 };

/// Runs one qma invocation. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qma
