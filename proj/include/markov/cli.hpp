#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace markov::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_domain = 3;
inline constexpr int exit_internal = 4;

// Runs the command line `args` (program name excluded). Reports go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace markov::cli
