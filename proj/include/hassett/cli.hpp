#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hassett::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kGuard = 3,
};

inline constexpr int kDefaultMaxN = 9;

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hassett::cli
