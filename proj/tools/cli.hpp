#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prl::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kRuntimeError = 3 };

// Runs the `prl` command line with args[0] being the program name. Results
// go to `out`, progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prl::cli
