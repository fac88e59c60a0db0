#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nil::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInputError = 2,
  kHypothesisError = 3,
  kInconclusive = 4,
};

struct RunOptions {
  /// ANSI styling of text output.
  bool color = false;
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const RunOptions& options = {});

}  // namespace nil::cli
