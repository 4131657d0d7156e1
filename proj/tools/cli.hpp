#pragma once

#include <iosfwd>

namespace rwcre::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// Entry point of the `rwcre` tool, usable in-process by tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rwcre::cli
