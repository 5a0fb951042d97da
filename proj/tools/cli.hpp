#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace casimir::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kNumericalFailure = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
