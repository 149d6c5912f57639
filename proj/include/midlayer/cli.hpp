#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace midlayer {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInternal = 4;

// Runs one command, e.g. {"count", "exact", "--d", "2", "--q", "4"}.
// Results go to `out` (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace midlayer
