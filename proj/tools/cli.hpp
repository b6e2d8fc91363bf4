#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace integralgap::cli {

// Runs one subcommand. `args` excludes the program name. JSON results go
// to `out`, a short human summary to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace integralgap::cli
