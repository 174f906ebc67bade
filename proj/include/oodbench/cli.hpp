#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oodbench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one command line (args excludes the program name). Requested data goes
// to `out`; progress and "error:<category>: ..." lines go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oodbench
