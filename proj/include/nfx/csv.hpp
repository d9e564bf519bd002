#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace nfx::csv {

/// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string escape(std::string_view field);

/// Reads one record. Quoted fields may span lines. Returns false at EOF.
/// Trailing CR is stripped.
bool read_record(std::istream& in, std::vector<std::string>& fields);

std::vector<std::string> split_line(std::string_view line);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace nfx::csv
