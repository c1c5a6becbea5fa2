#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace threefold::cli {

/// Runs one command line (without the program name). Returns 0 when a
/// verdict was computed, 1 on input or engine errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace threefold::cli
