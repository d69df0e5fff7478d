#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wharm::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kFlagError = 2,
  kDomainError = 3,
  kOutputError = 4,
};

/// Runs the tool on `args` (without the program name). Results go to `out`
/// (or the --out file); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wharm::cli
