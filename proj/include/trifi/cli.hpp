#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trifi {

// Full command dispatch; argv without the program name. Reports go to out,
// diagnostics to err. Returns 0 on success, 1 when a verification fails
// (the report is still emitted), 2 on malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace trifi
