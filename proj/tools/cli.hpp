#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fneq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kData = 2;
inline constexpr int kTrain = 3;

/// Runs one `fneq` subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fneq::cli
