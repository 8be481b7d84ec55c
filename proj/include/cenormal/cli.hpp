#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace cenormal::cli {

enum ExitCode : int {
    kSuccess = 0,
    kMismatch = 1,
    kUsage = 2,
    kResource = 3,
};

/// Runs one command line (args excludes the program name). Everything the
/// commands print goes to `out`; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cenormal::cli
