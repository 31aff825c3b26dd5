#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamcycle::cli {

// Exit codes: 0 success, 1 domain error (divisibility, capacity, bad input
// file), 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name. Results go to `out` unless --output names
// a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace hamcycle::cli
