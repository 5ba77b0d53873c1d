#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mg {

/// Command-line driver; args exclude the program name. Exit codes: 0 success,
/// 2 input/parse failure, 3 domain precondition failure, 4 general-position
/// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mg
