#pragma once

#include <string>
#include <string_view>

#include "ibu/scenario.hpp"

namespace ibu {

// Parses the scenario file format (see docs/scenario-format.md). The result
// has passed validate_scenario. Throws ParseError with a byte offset on
// malformed input and Error on semantic problems (unknown worlds, invalid
// states, script edges breaking the update semantics).
Scenario parse_scenario(std::string_view text);

// Canonical rendering; parse(print(parse(x))) equals parse(x) and printing
// is stable under re-parsing.
std::string print_scenario(const Scenario& sc);

}  // namespace ibu
