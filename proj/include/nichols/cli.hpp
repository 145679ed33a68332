#pragma once

// Command-line front end.  Exit codes: 0 success, 1 usage or input error,
// 2 mathematical findings (axiom violations, obstructions, failed checks).

#include <ostream>

namespace nichols {

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace nichols
