#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stechkin::cli {

enum ExitCode : int {
  kOk = 0,
  kBadConfig = 2,
  kAdmissibility = 3,
  kNonConvergence = 4,
  kVerificationFailed = 5,
};

/// Name of the environment variable that overrides the default rel_tol.
inline constexpr const char* kRelTolEnv = "STECHKIN_REL_TOL";

/// Parses args (without the program name), runs the subcommand and writes
/// the report to out and diagnostics to err. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stechkin::cli
