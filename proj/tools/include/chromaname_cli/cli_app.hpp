#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chromaname/error.hpp"

namespace chromaname::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDataDefect = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code) noexcept;

/// Runs one command line. `args` excludes the program name. Results go to
/// `out`; stage timings, warnings and the error line go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chromaname::cli
