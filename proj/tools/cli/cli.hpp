#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxsliced::cli {

/// Exit codes of `run`.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,         ///< I/O or unexpected failure
  kBadConfig = 2,       ///< unknown key, malformed value or missing required option
  kInvalidProblem = 3,  ///< dimension, size or precondition violation in the input
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "MAXSLICED_OUT_DIR";

/// Entry point of the command-line harness. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxsliced::cli
