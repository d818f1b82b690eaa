#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tcpdist::csv {

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double x);

/// Strict full-field parse; throws std::invalid_argument on trailing garbage.
double parse_double(std::string_view text);
unsigned long long parse_u64(std::string_view text);

/// Splits one CSV line on commas (no quoting; fields here are numeric or
/// bare identifiers).
std::vector<std::string_view> split(std::string_view line);

/// Joins already-rendered fields with commas.
std::string join(const std::vector<std::string>& fields);

}  // namespace tcpdist::csv
