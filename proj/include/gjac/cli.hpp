#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gjac {

/// Exit codes: 0 definite answer, 2 undecided, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gjac
