#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace superburst::text {

// Locale-independent number I/O.
double parse_double(std::string_view token, std::string_view context);
long long parse_int(std::string_view token, std::string_view context);

// Shortest representation that parses back to the same double.
std::string shortest(double value);
// Fixed 17 significant digits, used for CSV columns.
std::string sig17(double value);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace superburst::text
