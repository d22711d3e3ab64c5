#ifndef RESYM_TOOLS_CLI_HPP
#define RESYM_TOOLS_CLI_HPP

#include <string>
#include <vector>

namespace resym::cli {

/// Runs the resym command line. Arguments exclude the program name.
/// Exit codes: 0 success, 1 input error, 2 numerical failure,
/// 3 verification failure.
int run(const std::vector<std::string>& args);

}  // namespace resym::cli

#endif
