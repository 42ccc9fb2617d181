#pragma once

#include <ostream>

namespace koethe {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitValidation = 2,
  kExitInternal = 3,
};

/// Parses argv, runs one job and writes its document to `out`. Error documents go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace koethe
