#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsym {

// Exit codes: 0 verified/true, 1 fail/unverified/false, 2 input error.
// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rsym
