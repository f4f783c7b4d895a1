#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binomsum::cli {

/// Exit codes: 0 success, 2 usage/validation error, 3 enumeration guard
/// exceeded, 1 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;

/// Dispatches one subcommand. Tables go to --out or `out`; diagnostics are a
/// single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv front end: forwards to the stream overload on stdout/stderr.
int run(int argc, const char* const* argv);

}  // namespace binomsum::cli
