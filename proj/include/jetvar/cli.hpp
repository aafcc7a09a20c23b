#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jetvar {

// Runs the jetvar command line on args (without the program name).
// Exit codes: 0 ok, 1 nonzero residual, 2 usage, parse or model error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jetvar
