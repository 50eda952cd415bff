#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dotlab {

// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitCounterexample = 1, kExitInput = 2, kExitBudget = 3 };

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dotlab
