#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flora {

std::string trim(std::string_view s);

// Trims and collapses internal whitespace runs to single spaces.
std::string normalize_whitespace(std::string_view s);

std::string to_lower(std::string_view s);

// Normalized key for case-insensitive name comparison.
std::string name_key(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

// Reads delimited rows with optional quoting. A quote char of '\0' disables
// quote handling. Handles LF and CRLF line endings; quoted fields may span
// lines.
class DelimitedReader {
public:
    DelimitedReader(std::istream& in, char delim = ',', char quote = '"');

    // Returns false at end of stream.
    bool next_row(std::vector<std::string>& fields);

private:
    std::istream& in_;
    char delim_;
    char quote_;
};

// One CSV-escaped line (no terminator). Quotes a field only when it contains
// the delimiter, a quote, or a newline.
std::string join_delimited(const std::vector<std::string>& fields, char delim = ',');

std::optional<double> parse_double(std::string_view s);

// Fixed-point formatting with round-half-to-even at the given precision.
std::string format_fixed_banker(double value, int decimals);

}  // namespace flora
