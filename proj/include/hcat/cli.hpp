#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcat::cli {

inline constexpr int kExitPassed = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name). Reports go to `out`
/// (or the --output file), diagnostics to `err`. Returns 0 when the check
/// passed or the construction succeeded, 1 when a check failed, and 2 on
/// input, validation or capacity errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcat::cli
