#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace esakia::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace esakia::cli
