#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simclust::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2 };

/// Runs one simclust invocation. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simclust::cli
