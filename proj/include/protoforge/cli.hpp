#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace protoforge::cli {

enum ExitCode : int {
    kOk = 0,
    kUnsat = 1,
    kViolations = 2,
    kUsage = 3,
    kIoError = 4,
    kBudget = 5,
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace protoforge::cli
