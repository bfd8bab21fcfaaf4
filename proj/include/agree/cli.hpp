#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace agree::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kCheckFailed = 2,
  kNoMatch = 3,
};

/// Runs one command. args excludes the program name. JSON results go to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agree::cli
