#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symdet::cli {

/// Runs one command line (args excludes the program name) and returns the
/// process exit status: 0 ok, 1 I/O, 2 validation, 3 parse, 4 numeric.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symdet::cli
