#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trigon {

/// Run the command-line interface on the given arguments (argv[0] not
/// included). Returns the process exit code: 0 success / relation holds,
/// 1 usage or input error, 2 a mathematical violation was found.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trigon
