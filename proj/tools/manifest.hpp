#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace linebet::cli {

/// Hex-encoded SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Hex-encoded SHA-256 of a file's contents. Throws IoError.
std::string sha256_file(const std::string& path);

/// Whole-file read/write. Throw IoError on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

struct FileDigest {
  std::string path;  // inputs: as passed on the command line; outputs: basename
  std::string sha256;
};

/// The replayable record of one run: the subcommand, every resolved
/// parameter, and digests of what was read and written. A manifest plus the
/// original input files is sufficient to reproduce the outputs byte for
/// byte.
struct Manifest {
  std::string subcommand;
  nlohmann::json params;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  std::string to_json_text() const;
  /// Throws ParseError on malformed JSON, ValidationError on missing fields.
  static Manifest from_json_text(const std::string& text);
};

}  // namespace linebet::cli
