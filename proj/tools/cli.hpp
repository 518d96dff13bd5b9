#pragma once

#include <string>
#include <vector>

namespace nonnorm::cli {

/// Exit codes: 0 success, 1 a valid negative answer (the payload carries "reasons"), 2 usage or internal error.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one invocation. args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace nonnorm::cli
