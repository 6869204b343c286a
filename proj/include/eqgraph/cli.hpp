#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqgraph::cli {

// Runs one command line (without the program name).  Exit codes: 0 success,
// 1 failed checks, 2 parse/usage errors, 3 domain errors, 4 internal errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqgraph::cli
