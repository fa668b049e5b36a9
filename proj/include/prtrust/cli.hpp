#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace prtrust::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,       // validation, parse, config, or usage error
  kNetwork = 2,
  kInsufficient = 3,  // a sampling stratum is too small
};

/// Runs one `prtrust` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prtrust::cli
