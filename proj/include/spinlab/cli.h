#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinlab {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,      ///< unreadable file, parse error, bad option or config value
  kExitSemantic = 3,   ///< undefined name or violated precondition
  kExitNumerical = 4,  ///< divergence, non-convergence, failed validation
};

/// Runs the command line `args` (program name excluded). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinlab
