#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace effdim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

// Runs the effdim command line. `args` excludes the program name. Output goes
// to `out`, diagnostics to `err`; the return value is the process exit code
// (0 success, 2 usage or validation error, 1 numerical failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace effdim::cli
