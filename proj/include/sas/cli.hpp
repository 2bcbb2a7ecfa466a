#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sas {

// Exit status: 0 ok, 1 validation or usage error, 2 runtime error.
// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sas
