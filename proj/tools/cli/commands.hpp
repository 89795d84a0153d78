#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor::cli {

/// Runs one invocation (arguments exclude the program name). Returns the
/// process exit code: 0 success, 1 I/O failure, 2 domain or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
