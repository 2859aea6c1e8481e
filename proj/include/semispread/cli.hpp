#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace semispread {

/// Exit codes: 0 verified, 1 verification failed (report still written),
/// 2 bad input or usage.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInput = 2 };

/// Runs one command. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semispread
