#include "linebet/jsonschema.hpp"

#include <nlohmann/json.hpp>

#include "linebet/errors.hpp"

namespace linebet {
namespace {

using nlohmann::json;

bool matches_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

void check(const json& value, const json& schema, const std::string& path,
           std::vector<std::string>& errors) {
  if (!schema.is_object()) return;

  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(value, t.get<std::string>());
    } else if (t.is_array()) {
      for (const json& alt : t) ok = ok || matches_type(value, alt.get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + t.dump() + ", got " +
                       std::string(value.type_name()));
      return;  // deeper checks would only cascade
    }
  }

  if (schema.contains("const") && value != schema["const"]) {
    errors.push_back(path + ": expected const " + schema["const"].dump());
  }

  if (schema.contains("enum")) {
    bool found = false;
    for (const json& alt : schema["enum"]) found = found || value == alt;
    if (!found) {
      errors.push_back(path + ": value " + value.dump() + " not in enum " +
                       schema["enum"].dump());
    }
  }

  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const json& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          errors.push_back(path + ": missing required property '" +
                           key.get<std::string>() + "'");
        }
      }
    }
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
        if (value.contains(it.key())) {
          check(value[it.key()], it.value(), path + "/" + it.key(), errors);
        }
      }
    }
  }

  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(path + ": fewer than minItems items");
    }
    if (schema.contains("maxItems") &&
        value.size() > schema["maxItems"].get<std::size_t>()) {
      errors.push_back(path + ": more than maxItems items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        check(value[i], schema["items"], path + "/" + std::to_string(i), errors);
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_json(const std::string& json_text,
                                       const std::string& schema_text) {
  json value = json::parse(json_text, nullptr, false);
  if (value.is_discarded()) throw ParseError("malformed JSON document");
  json schema = json::parse(schema_text, nullptr, false);
  if (schema.is_discarded()) throw ParseError("malformed JSON schema");

  std::vector<std::string> errors;
  check(value, schema, "$", errors);
  return errors;
}

}  // namespace linebet
