#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qroute::cli {

enum ExitCode : int { kFeasible = 0, kInfeasible = 1, kUsageError = 2 };

/// Entry point behind the `qroute` binary. Subcommands: gen, solve, compare,
/// sweep, walk. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Locale-independent shortest form with at most 12 significant digits.
std::string format_number(double v);

}  // namespace qroute::cli
