#pragma once

#include <string>
#include <vector>

namespace linebet {

/// Checks a JSON document against a schema supporting the subset this
/// project's report schemas use: type (including ["T", "null"] unions),
/// properties, required, items, enum, const, minItems and maxItems.
/// Returns human-readable violations; empty means valid. Throws ParseError
/// on malformed JSON in either argument.
std::vector<std::string> validate_json(const std::string& json_text,
                                       const std::string& schema_text);

}  // namespace linebet
