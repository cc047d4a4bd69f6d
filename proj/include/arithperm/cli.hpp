#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arithperm::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace arithperm::cli
