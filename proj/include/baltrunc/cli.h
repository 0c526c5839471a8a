#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace baltrunc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kValidationError = 2,
  kNumericalFailure = 3,
  kVerificationFailed = 4,
};

/// Environment variable overriding the default rank tolerance.
inline constexpr const char* kTolEnv = "BALTRUNC_TOL";

/// Runs the command line `args` (program name excluded).
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace baltrunc::cli
