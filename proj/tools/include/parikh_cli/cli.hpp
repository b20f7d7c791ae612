#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parikh::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kInvariant = 3,
  kDepthExceeded = 4,
};

/// Runs the `parikh` command line; args excludes the program name.
/// Flags can also be set through PARIKH_* environment variables.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parikh::cli
