#pragma once

#include <iosfwd>

namespace objestures::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitUsage = 64;

inline constexpr const char* kToolVersion = "0.1.0";

/// Entry point of the `objestures` tool. Primary output goes to `out` unless
/// --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace objestures::cli
