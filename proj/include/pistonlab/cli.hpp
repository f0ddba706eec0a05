#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pistonlab::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNumericalError = 2, kSelftestFailure = 3 };

// Runs one subcommand.  args excludes the program name.  Results go to out
// (or to --output FILE), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pistonlab::cli
