#pragma once

#include <string>
#include <vector>

namespace loxo::cli {

inline constexpr const char* kVersion = "1.0.0";

struct CommandResult {
  int exit_code = 0;
  std::string out;  // JSON report, newline terminated
  std::string err;  // diagnostics
};

/// Runs one subcommand; `args` excludes the program name.
/// Exit codes: 0 success, 2 input error, 3 resource limit.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace loxo::cli
