#pragma once

#include <ostream>
#include <span>
#include <string>

namespace pslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;      // parse errors, unmet preconditions
inline constexpr int kExitInvariant = 3;  // an unconditional relation failed
inline constexpr int kExitInternal = 1;   // anything else

// Runs one subcommand. args excludes the program name. Reports go to `out`
// (or the --output file); diagnostics, warnings and usage go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pslab::cli
