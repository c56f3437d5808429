#pragma once

// Command dispatch for the orbitcov tool: validate, orbit, check, decompose
// and report. Exit codes: 0 all executed checks pass, 1 some check failed,
// 2 usage or fixture error.

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitcov {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitcov
