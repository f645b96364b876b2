#pragma once

#include <string>
#include <vector>

namespace jspec {

// Runs the full command-line interface on argv-style arguments (excluding
// the program name). Returns the process exit code:
//   0 all certified checks passed (or nothing to certify)
//   1 at least one certified FAIL
//   2 at least one INDETERMINATE after precision escalation (and no FAIL)
//   3 input/usage error
int run(const std::vector<std::string>& args);

}  // namespace jspec
