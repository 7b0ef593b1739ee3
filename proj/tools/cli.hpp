#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace socrescale::cli {

// Exit codes. solve-feas also returns the SolveStatus codes 0, 1 and 2.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

/// Runs the command line `args` (without the program name). Certificates and
/// reports written to "-" go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socrescale::cli
