#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hermlab::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Environment variable that overrides the default `validate` tolerance.
inline constexpr const char* kTolEnv = "HERMLAB_TOL";

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hermlab::cli
