#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace negtype::cli {

// Exit codes beyond the per-command 0/1/2 outcomes.
inline constexpr int kExitInputError = 3;    // usage, I/O, parse, validation
inline constexpr int kExitNumericError = 4;  // eigensolver, witness search

/// Runs one command line (args[0] is the program name). Output goes to
/// `out` unless --out redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace negtype::cli
