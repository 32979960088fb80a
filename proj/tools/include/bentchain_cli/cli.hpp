#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bentchain::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kValidation = 3,
  kNumerical = 4,
  kIo = 5,
};

/// Parses `args` (without the program name), runs one command and writes its
/// outputs under out/<command>/<label>/. The one-line summary goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bentchain::cli
