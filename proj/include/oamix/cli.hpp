#pragma once

#include <iosfwd>

namespace oamix::cli {

/// Exit codes: 0 success, 2 usage, 3 data or validation, 4 numerical.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oamix::cli
