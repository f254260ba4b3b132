#pragma once

#include <iosfwd>

namespace homcone::cli {

enum ExitCode { Success = 0, Usage = 1, BadInput = 2, NumericalFailure = 3 };

// Runs one `homcone` command line.  Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homcone::cli
