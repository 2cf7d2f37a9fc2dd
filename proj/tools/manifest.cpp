#include "manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "linebet/errors.hpp"

namespace linebet::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)) {
    throw IoError("sha-256 digest failed");
  }
  std::string hex(static_cast<std::size_t>(len) * 2, '0');
  static const char kDigits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex[2 * i] = kDigits[digest[i] >> 4];
    hex[2 * i + 1] = kDigits[digest[i] & 0xf];
  }
  return hex;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path);
  return std::move(buf).str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

std::string Manifest::to_json_text() const {
  nlohmann::json in_rows = nlohmann::json::array();
  for (const FileDigest& f : inputs) in_rows.push_back({{"path", f.path}, {"sha256", f.sha256}});
  nlohmann::json out_rows = nlohmann::json::array();
  for (const FileDigest& f : outputs) out_rows.push_back({{"path", f.path}, {"sha256", f.sha256}});
  nlohmann::json root = {
      {"subcommand", subcommand},
      {"params", params},
      {"inputs", std::move(in_rows)},
      {"outputs", std::move(out_rows)},
  };
  return root.dump(2) + "\n";
}

Manifest Manifest::from_json_text(const std::string& text) {
  nlohmann::json root = nlohmann::json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) throw ParseError("malformed manifest JSON");
  Manifest m;
  try {
    m.subcommand = root.at("subcommand").get<std::string>();
    m.params = root.at("params");
    for (const nlohmann::json& row : root.at("inputs")) {
      m.inputs.push_back({row.at("path").get<std::string>(), row.at("sha256").get<std::string>()});
    }
    for (const nlohmann::json& row : root.at("outputs")) {
      m.outputs.push_back({row.at("path").get<std::string>(), row.at("sha256").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad manifest: ") + e.what());
  }
  if (!m.params.is_object()) throw ValidationError("bad manifest: params must be an object");
  return m;
}

}  // namespace linebet::cli
