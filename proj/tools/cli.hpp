#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scissor::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kMalformedInput = 2,
  kInvalidParameters = 3,
};

/// Runs the `scissor` command line with `args` (program name excluded).
/// Machine-readable results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scissor::cli
