#pragma once

#include <iosfwd>

namespace zeta_ladder::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kEnvironment = 3;
constexpr int kAssertion = 4;

/// Entry point of the `zeta-ladder` command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeta_ladder::cli
