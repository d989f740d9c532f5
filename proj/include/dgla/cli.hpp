#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dgla {

/// Runs the command line tool on `args` (without the program name).
/// Returns 0 on success, 1 when a build or check fails, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dgla
