#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bopgraph::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNumericalError = 2,
  kDegenerateClass = 3,
};

// Runs one command line. `args` excludes the program name. Results go to
// `out` unless redirected with --out; diagnostics and warnings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bopgraph::cli
