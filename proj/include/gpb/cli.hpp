#pragma once

// Batch front end. Exit codes: 0 pass, 1 domain failure, 2 input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace gpb {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitPass = 0, kExitDomain = 1, kExitInput = 2 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpb
