#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace odmx::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kError = 2 };

// Runs the odmx command line. Reports go to `out`, statistics and
// diagnostics to `err`. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace odmx::cli
