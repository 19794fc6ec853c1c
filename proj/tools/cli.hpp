#pragma once

#include <string>
#include <vector>

namespace omm {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

/// Runs the front end with argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args);

}  // namespace omm
