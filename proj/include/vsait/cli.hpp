#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vsait::cli {

// Exit-code contract shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitConfig = 3,
};

// Runs the command line `args` (without the program name). Results go to
// `out`; diagnostics and the effective-config echo go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vsait::cli
