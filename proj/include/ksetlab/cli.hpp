#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kset::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,           ///< answered (UNSAT is an answer)
  kBadInput = 2,     ///< malformed input, unknown flag, out-of-domain argument
  kBudget = 3,       ///< a work budget ran out before an answer
  kInconsistent = 4, ///< bounds or oracle disagree with each other
};

/// Parses argv (argv[0] is the program name), runs the subcommand, writes the
/// report to `out` and diagnostics to `err`.
auto run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) -> int;

}  // namespace kset::cli
