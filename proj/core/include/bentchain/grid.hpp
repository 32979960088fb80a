#pragma once

#include <string_view>
#include <vector>

namespace bentchain {

/// Parses `start:step:end` (both ends inclusive within half a step) or a
/// comma-separated list of values.
std::vector<double> parse_grid(std::string_view text);
std::vector<int> parse_int_grid(std::string_view text);

}  // namespace bentchain
