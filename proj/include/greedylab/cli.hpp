#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greedylab {

/// Exit codes of the command-line front end.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;  // parse errors, unknown vector, missing family
inline constexpr int kScope = 3;  // ScopeTooSmall, CapExceeded
inline constexpr int kOther = 4;
}  // namespace exit_code

/// `greedylab greedy|curve|constants|verify [options]`. Data goes to `out` (or
/// --out FILE), diagnostics to `err`. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace greedylab
