#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obslab::cli {

// Runs one command line (args[0] is the program name). Returns the process
// exit code: 0 on success, 2 on a structured violation, 1 on bad input.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace obslab::cli
