#pragma once

#include <string>
#include <vector>

namespace loadsift::csv {

/// Splits one CSV line on commas. Fields must not themselves contain commas;
/// none of the formats emitted or consumed here quote fields.
std::vector<std::string> split(const std::string& line);

/// Strips a trailing '\r' (CRLF input) and surrounding blanks.
std::string trim(const std::string& field);

bool parse_double(const std::string& field, double& out);
bool parse_int(const std::string& field, int& out);

/// Formats with 12 significant digits, enough for CSV round trips to be
/// faithful to 1e-9 relative while staying compact.
std::string format_double(double value);

} // namespace loadsift::csv
