#pragma once

// Command-line front end: dispersion, equilibrium, stationary, simulate, triad.
// Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error.
// Errors go to stderr prefixed with "ERROR:".

#include <iosfwd>
#include <string>
#include <vector>

namespace rossby::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int dispatch(int argc, char** argv);
/// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rossby::cli
