#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace completeness::cli {

/// Exit statuses of the command-line tool.
enum ExitStatus : int {
    kOk = 0,
    kVerifyFailed = 1,
    kBadCertificate = 2,
    kUsage = 64,
    kInternal = 70,
};

/// Environment variable holding the default prefix length.
inline constexpr const char* kPrefixEnv = "COMPLETENESS_PREFIX";

/// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace completeness::cli
