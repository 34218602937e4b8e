#pragma once

#include <iosfwd>

namespace taub::cli {

/// Runs the command line with the given arguments (argv[0] is the program
/// name). Reports go to `out` unless --out is given; diagnostics to `err`.
/// Returns the process exit code: 0 on success, 1 when a verification check
/// fails, 2 on invalid input and 3 on numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace taub::cli
