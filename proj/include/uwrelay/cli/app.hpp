#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uwrelay::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kValidation = 3,
    kNumeric = 4,
};

/// Runs the relay_planner command line. `args` excludes the program name.
/// Results go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uwrelay::cli
