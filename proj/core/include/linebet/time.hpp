#pragma once

#include <cstdint>
#include <string>

namespace linebet {

/// Seconds since the Unix epoch, always interpreted as UTC.
using UtcSeconds = std::int64_t;

/// Parses an ISO-8601 UTC timestamp: "YYYY-MM-DDTHH:MM:SS" with an optional
/// trailing "Z", or a bare "YYYY-MM-DD" (taken as midnight). Throws ParseError.
UtcSeconds parse_utc(const std::string& text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ". Inverse of parse_utc for full timestamps.
std::string format_utc(UtcSeconds t);

/// Calendar year of the instant, in UTC.
int utc_year(UtcSeconds t);

}  // namespace linebet
