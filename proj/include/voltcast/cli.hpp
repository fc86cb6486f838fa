#pragma once

#include <string>
#include <vector>

namespace voltcast::cli {

/// Runs one CLI invocation (args exclude the program name) and returns the
/// process exit code: 0 success, 2 usage error, 3 data error, 4 convergence
/// error. Verbosity is controlled by the VOLTCAST_LOG environment variable
/// (quiet|info|debug).
int run(const std::vector<std::string>& args);

}  // namespace voltcast::cli
