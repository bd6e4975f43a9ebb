#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace timely::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kAffirmative = 0;  // satisfiable / verified / contained
inline constexpr int kNegative = 1;     // unsatisfiable / violated / not contained
inline constexpr int kUsageError = 2;   // bad arguments, unreadable or malformed input

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. All output goes to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace timely::cli
