#pragma once

#include <iosfwd>

namespace outlierkit::cli {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

/// Entry point of the command-line tool: detect, simulate-critical,
/// experiment and significance-curve. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace outlierkit::cli
