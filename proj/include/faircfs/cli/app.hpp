#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace faircfs::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,
  kIoError = 3,
  kDataError = 4,
  kAlgorithmError = 5,
};

// Runs the command line `args` (without the program name). Diagnostics go
// to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace faircfs::cli
