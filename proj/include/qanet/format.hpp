#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qanet {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// As format_double, or "null" when empty.
std::string format_optional(const std::optional<double> &v);

/// Strict parse of a whole string as a double.
std::optional<double> parse_double(std::string_view s);

/// Double-quote a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

} // namespace qanet
