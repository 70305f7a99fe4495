#ifndef TSFSB_CSV_UTIL_HPP
#define TSFSB_CSV_UTIL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsfsb::csv {

/// Shortest decimal text that parses back to the same double; NaN -> "NaN".
std::string format_double(double x);

/// Strict parse of a whole token; "NaN"/"nan" parse to quiet NaN.
std::optional<double> parse_double(std::string_view token);

std::vector<std::string> split(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

std::string join(const std::vector<std::string>& parts, char sep = ',');

}  // namespace tsfsb::csv

#endif  // TSFSB_CSV_UTIL_HPP
