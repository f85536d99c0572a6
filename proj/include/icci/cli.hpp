#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace icci {

// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage error, 3 I/O error.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitIo = 3 };

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icci
