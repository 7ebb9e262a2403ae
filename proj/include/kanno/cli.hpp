#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kanno {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUndecided = 2, kExitInputError = 3 };

/// Runs `kanno <command> ...`; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kanno
