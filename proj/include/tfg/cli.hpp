#ifndef TFG_CLI_HPP
#define TFG_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tfg {

// Command dispatch for the `tfg` tool; returns the process exit code
// (0 success, 2 bad input, 3 broken internal invariant).  Factored out of
// main() so tests can drive it directly and compare bytes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfg

#endif
