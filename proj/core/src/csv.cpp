#include "linebet/csv.hpp"

#include <charconv>

#include "linebet/errors.hpp"

namespace linebet {

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (i <= line.size()) {
    if (i == line.size()) {
      if (quoted) throw ParseError("unterminated quoted field", line_no);
      out.push_back(field);
      break;
    }
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          quoted = false;
          ++i;
          if (i < line.size() && line[i] != ',') {
            throw ParseError("text after closing quote", line_no);
          }
        }
      } else {
        field += c;
        ++i;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
      ++i;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
      ++i;
    } else {
      field += c;
      ++i;
    }
  }
  return out;
}

std::string csv_escape(std::string_view field) {
  bool needs = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
  }
  if (!field.empty() && (field.front() == ' ' || field.back() == ' ')) needs = true;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace linebet
