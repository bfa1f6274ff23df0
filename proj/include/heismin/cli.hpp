#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace heismin::cli {

enum ExitCode { Ok = 0, Usage = 1, Numeric = 2, Parse = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heismin::cli
