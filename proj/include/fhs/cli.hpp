#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fhs {

// Runs one fhstool command. Exit codes: 0 success (verify: strictly
// optimal), 1 verify found a non-optimal set, 2 usage error, 3 validation
// failure, 4 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fhs
