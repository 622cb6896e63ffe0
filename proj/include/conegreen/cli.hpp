#ifndef CONEGREEN_CLI_HPP
#define CONEGREEN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace conegreen::cli {

// Exit codes: 0 success, 1 validation failure, 2 usage error,
// 3 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace conegreen::cli

#endif
