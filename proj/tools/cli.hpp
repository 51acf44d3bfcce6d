#pragma once

#include <ostream>

namespace dwork::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitStructural = 2;
inline constexpr int kExitUsage = 64;

/// The whole command line front end; main() only forwards to it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwork::app
