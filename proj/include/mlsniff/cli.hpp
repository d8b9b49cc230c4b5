#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlsniff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `mlsniff <args...>` (program name excluded) and
/// returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlsniff
