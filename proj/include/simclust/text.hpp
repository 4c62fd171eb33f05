#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace simclust::text {

/// Lowercases ASCII and the Latin-1 / Latin Extended-A letters used by
/// German and most Western European hashtags. Other code points and
/// malformed bytes pass through unchanged.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

/// True if s contains an ASCII or Unicode whitespace character.
bool has_whitespace(std::string_view s);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// Splits one CSV line (RFC 4180 quoting, no embedded line breaks).
std::vector<std::string> split_csv_line(std::string_view line);

std::string xml_escape(std::string_view s);

/// Escapes a string for use inside a double-quoted DOT identifier.
std::string dot_escape(std::string_view s);

}  // namespace simclust::text
