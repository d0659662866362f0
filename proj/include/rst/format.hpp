#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rst {

/// Shortest-safe decimal form with 17 significant digits ("%.17g").
std::string format_double(double v);

/// Splits one CSV line on commas; no quoting (all schemas here are numeric).
std::vector<std::string_view> split_csv(std::string_view line);

/// Strict numeric parsing; throws std::invalid_argument mentioning `what`.
double parse_double(std::string_view s, const char* what);
long long parse_int(std::string_view s, const char* what);

}  // namespace rst
