#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ehsched::cli {

enum ExitCode : int {
    kOk = 0,
    kDefect = 1,        // compare found a ratio >= 2, or oracle-check rejected a report
    kParseError = 2,
    kInfeasible = 3,    // also configuration errors
    kPrecondition = 4,
};

/// Entry point shared by the ehsched executable and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ehsched::cli
