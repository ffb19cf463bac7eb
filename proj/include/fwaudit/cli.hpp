#ifndef FWAUDIT_CLI_HPP
#define FWAUDIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fwaudit {

// Exit codes: 0 success, 1 usage error, 2 input error, 3 when
// --fail-on-errors N is given and the detected error count reaches N.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fwaudit

#endif
