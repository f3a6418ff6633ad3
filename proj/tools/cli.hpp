#pragma once

#include <ostream>

namespace momentbc::cli {

/// Exit codes: 0 success, 2 invalid input, 3 numerical rejection.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitRejected = 3;

/// Runs one subcommand. Documents without --out go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace momentbc::cli
