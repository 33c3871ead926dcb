#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace levy {

inline constexpr std::string_view kToolName = "levy-info";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Exit codes of run().
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInvalid = 2,
    kExitStudyFailed = 3,
};

/// Runs the command line front end. args excludes the program name. CSV goes to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levy
