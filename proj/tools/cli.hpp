#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eitdicke::cli {

/// Runs the command line `args` (without the program name). CSV goes to `out`
/// unless --out is given; diagnostics go to `err`. Returns the exit status:
/// 0 ok, 1 usage or configuration error, 2 validation gate failed, 3 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eitdicke::cli
