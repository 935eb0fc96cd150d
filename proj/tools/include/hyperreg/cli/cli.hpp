#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitAnalytic = 2;
inline constexpr int kExitIo = 3;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperreg::cli
