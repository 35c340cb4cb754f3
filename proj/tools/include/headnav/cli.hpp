#pragma once

#include <iosfwd>

namespace headnav::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kRuntime = 3,
};

/// Runs the `headnav` command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace headnav::cli
