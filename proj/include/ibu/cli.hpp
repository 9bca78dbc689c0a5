#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ibu {

// Runs one CLI invocation. Arguments exclude the program name. Returns the
// process exit status: 0 when everything checked holds or matches, 1 when a
// violation or mismatch was found, 2 on usage or validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ibu
