// Command-line front end. Exit codes: 0 success, 1 usage or invalid input, 2 bounded search
// unresolved, 3 requested precision not certifiable.
#ifndef ARITHDYN_CLI_HPP
#define ARITHDYN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace arithdyn {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Arguments without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace arithdyn

#endif
