#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncft::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFinding = 2;

/// Runs one `ncft` command. Reports go to --out or `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncft::cli
