#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace triperi::cli {

/// Dispatches one CLI invocation (args exclude the program name) and writes
/// the report to `out`, diagnostics to `err`. Returns the process exit code:
/// 0 success, 1 negative verdict (axiom violation, not contracting, stalled
/// solve), 2 bad input (parse errors, bad flags, capacity), 3 period-two
/// violation detected by the solver.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace triperi::cli
