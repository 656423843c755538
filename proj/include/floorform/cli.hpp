#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace floorform::cli {

enum ExitCode : int { kFound = 0, kNotFound = 1, kUsage = 2, kIo = 3 };

/// Environment variable overriding the scan cap.
inline constexpr const char* kMaxNEnv = "FLOORFORM_MAX_N";

/// Run one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floorform::cli
