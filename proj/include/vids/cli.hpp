#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vids {

/// Exit codes: 0 pass / success, 1 validation failed, 2 usage error, 3 operational error.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitError = 3 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vids
