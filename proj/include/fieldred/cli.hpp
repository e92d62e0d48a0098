#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fieldred {

// Runs the command line; returns the process exit status.
// 0: success, 1: a check failed, 2: usage error, 3: budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fieldred
