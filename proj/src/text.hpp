#pragma once

#include <string_view>
#include <vector>

namespace shepwm::detail {

std::vector<std::string_view> split(std::string_view text, char sep);

// Whole-string parses; anything left over is a ParseError.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

}  // namespace shepwm::detail
