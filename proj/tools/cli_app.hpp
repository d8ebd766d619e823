#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcl::cli {

/// Parses and dispatches one CLI invocation. `args` excludes the program
/// name. Returns the process exit status: 0 success / check passed,
/// 1 check failed, 2 usage or parameter error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rcl::cli
