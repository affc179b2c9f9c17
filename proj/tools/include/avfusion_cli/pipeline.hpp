#pragma once

#include <iosfwd>

namespace avf::cli {

/// Exit status of run_pipeline.
enum ExitCode : int {
  kExitOk = 0,
  kExitDataError = 1,
  kExitUsageError = 2,
};

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Reports go to `out`, diagnostics to `err`.
int run_pipeline(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace avf::cli
