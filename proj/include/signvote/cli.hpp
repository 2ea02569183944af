#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "signvote/error.hpp"

namespace signvote::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDataError = 2;
inline constexpr int kNumericError = 3;

/// Status for a library error: InvalidArgument is a usage error, the
/// convergence failures are numeric, everything else is bad data.
int exit_code(ErrorKind kind);

/// Runs one subcommand. `args` excludes the program name. Diagnostics go to
/// `err` as a single line; `out` receives a short human summary.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace signvote::cli
