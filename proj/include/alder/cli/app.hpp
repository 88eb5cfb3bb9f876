#pragma once

#include <iosfwd>

namespace alder::cli {

enum ExitCode : int { kPass = 0, kFindings = 1, kUsage = 2, kCacheIntegrity = 3 };

/// Parses the command line and runs one subcommand. Reports go to out,
/// diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace alder::cli
