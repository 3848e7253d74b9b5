#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace decarb::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kUsage = 2,
  kLimits = 3,
  kInfeasible = 4,
};

// Runs one command (`validate`, `solve` or `template`). args[0] is the
// program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace decarb::cli
