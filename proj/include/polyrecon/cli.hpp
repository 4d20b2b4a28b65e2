#pragma once

#include <iosfwd>

namespace polyrecon::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kBadInput = 2,
};

/// Parses argv and dispatches one subcommand. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyrecon::cli
