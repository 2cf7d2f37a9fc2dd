#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace linebet {

/// Splits one CSV record. Handles double-quoted fields with "" escapes;
/// embedded newlines are not supported. Throws ParseError (tagged with
/// line_no) on unbalanced quotes or text trailing a closing quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no = 0);

/// Quotes a field if it contains a comma, quote, or leading/trailing space.
std::string csv_escape(std::string_view field);

/// Shortest decimal text that round-trips the double (via std::to_chars).
/// Deterministic across runs, which keeps emitted files byte-stable.
std::string format_double(double v);

}  // namespace linebet
