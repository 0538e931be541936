#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace igm {

enum exit_code : int { exit_ok = 0, exit_internal = 1, exit_input = 2, exit_size_limit = 3 };

// Runs the command line (args excludes the program name). JSON goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace igm
