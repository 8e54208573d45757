#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magmakit {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  // not isomorphic, unequal, no solution, violations found
  kUsage = 2,     // bad arguments, unreadable or malformed input
  kResource = 3,  // a size or search cap was hit
};

/// Runs one `magmakit` invocation; args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace magmakit
