#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xover::cli {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // runtime, IO, or parse failure
  kBadArgs = 2,     // invalid arguments
  kViolation = 3,   // diagnostic violation detected (simulate)
};

// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xover::cli
