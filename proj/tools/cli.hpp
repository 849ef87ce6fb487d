#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cliff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAuditFailure = 3;
inline constexpr int kExitBreakdown = 4;

/// Runs the `cliff` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cliff::cli
