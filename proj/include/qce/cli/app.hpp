#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qce::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitValidation = 3,
    kExitNoConvergence = 4,
    kExitSweepViolation = 5,
};

/// Runs one command line (arguments after the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qce::cli
