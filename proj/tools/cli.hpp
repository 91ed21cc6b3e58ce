#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mincode::cli {

enum ExitStatus : int { success = 0, failure = 1, usage = 2 };

/// Runs one command line (argv[0] included). Reports go to `out` unless
/// --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mincode::cli
