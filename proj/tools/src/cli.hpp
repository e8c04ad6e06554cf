#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace desconf::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailure = 1,
    kUsage = 2,
};

/// Runs one invocation; args excludes the program name. Documents go to `out` (or the
/// --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace desconf::cli
