#ifndef FROBEX_CLI_HPP
#define FROBEX_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace frobex::cli {

/// Exit codes: 0 certificate valid, 1 invalid, 2 input error.
constexpr int exit_valid = 0;
constexpr int exit_invalid = 1;
constexpr int exit_input_error = 2;

/// Full command dispatch (verify | report | dump), writing to the given
/// streams. Exposed for in-process testing; main() forwards to it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frobex::cli

#endif
