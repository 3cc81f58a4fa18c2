#pragma once

#include <iosfwd>
#include <vector>

namespace fragmentc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

/// Runs the command line. `in`/`out` are also the server's transport.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fragmentc::cli
