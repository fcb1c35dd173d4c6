#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flagstrata::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadConfig = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagstrata::cli
