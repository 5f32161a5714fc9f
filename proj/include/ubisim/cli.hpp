#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ubisim::cli {

/// Exit codes of every subcommand.
inline constexpr int holds = 0;
inline constexpr int refuted = 1;
inline constexpr int usage_error = 2;

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ubisim::cli
