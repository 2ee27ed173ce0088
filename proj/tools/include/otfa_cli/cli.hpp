#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otfa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kIoError = 3,
};

/// Runs one `otfa` invocation. args[0] is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace otfa::cli
