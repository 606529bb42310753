#pragma once

#include <ostream>

namespace kloos {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitIdentityFailure = 1,
  kExitUsage = 2,
  kExitConsistency = 3,
};

/// Parses argv and runs one subcommand. Reports go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kloos
