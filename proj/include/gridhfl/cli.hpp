#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gridhfl::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 2 invalid input, 3 internal contract violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridhfl::cli
