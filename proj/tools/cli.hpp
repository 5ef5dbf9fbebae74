#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftoracle::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInputError = 2,
    kDomainError = 3,
    kVerificationFailed = 4,
    kConstructionError = 5,
};

inline constexpr const char* kBenchHeader = "n,m,s_count,oracle,build_ms,entries,bytes,q_mean_ns,q_p99_ns,max_stretch";

// Runs the command line (args excludes the program name) against the given
// streams and returns the exit code. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ftoracle::cli
