#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mwehsd {

/// Runs the command line. `args[0]` is the program name.
/// Exit codes: 0 success, 1 usage error, 2 data or validation error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwehsd
