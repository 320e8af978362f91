#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace delreal::cli {

/// Exit codes shared by every command.
enum Exit : int { kOk = 0, kUsage = 1, kFailed = 2, kInvalidInput = 3 };

/// Runs the command line (args[0] is the program name). Primary output goes
/// to `out`, messages and counts to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace delreal::cli
