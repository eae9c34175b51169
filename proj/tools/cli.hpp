#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace redukto {

// Exit codes of every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitInvalid = 3;

/// Runs the command line `args` (without the program name).
int redukto_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redukto
