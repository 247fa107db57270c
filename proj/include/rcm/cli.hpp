#ifndef RCM_CLI_HPP
#define RCM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rcm::cli {

// Exit codes: 0 ok/yes, 1 I/O or parse, 2 bad parameters, 3 structure
// violation, 4 certificate rejected, 5 decision no, 6 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcm::cli

#endif
