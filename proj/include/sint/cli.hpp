#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sint::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { ok = 0, violated = 1, input_error = 2, numerical_failure = 3 };

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sint::cli
