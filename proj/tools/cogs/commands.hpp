#ifndef COGS_TOOLS_COMMANDS_HPP
#define COGS_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cogs::cli {

// Process exit codes of every subcommand.
enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,     // unreadable or malformed input, bad flags
    exit_no_solution = 2,     // no path within the configured bounds
    exit_cap_exceeded = 3,    // oracle state space above --cap
    exit_verify_failed = 4,   // planner output rejected by the oracle
};

// Parses `args` (without the program name) and runs the subcommand. Reports
// go to `out`, diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cogs::cli

#endif  // COGS_TOOLS_COMMANDS_HPP
