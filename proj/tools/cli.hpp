#pragma once

#include <iosfwd>

namespace latred::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kUsageError = 2,
  kNumericalFault = 3,
};

/// Entry point shared by main() and the tests. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latred::cli
