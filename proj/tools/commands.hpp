#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "manifest.hpp"

namespace linebet::cli {

/// Shared plumbing for one command execution: where outputs go, how stdout
/// tables are rendered, and the input/output digest trail for the manifest.
struct RunContext {
  std::string out_dir = ".";
  std::string format = "json";  // stdout rendering: "json" or "text"
  unsigned workers = 1;
  bool quiet = false;  // suppress stdout data (replay verification mode)

  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  std::string out_path(const std::string& name) const;
  /// Digests an input file now so the manifest records what was read.
  void note_input(const std::string& path);
  /// Writes out_dir/name and records its digest.
  void write_output(const std::string& name, std::string_view bytes);
  /// Prints data to stdout unless quiet.
  void emit(std::string_view text) const;
};

/// Executes one subcommand. `params` holds every flag already resolved to a
/// value; commands write any value they derive from the data (generated
/// seeds, auto grid bounds) back into it so the manifest can replay the run
/// without recomputing. Throws linebet errors; the caller maps them to exit
/// codes.
void run_subcommand(const std::string& name, nlohmann::json& params, RunContext& ctx);

/// Re-runs a manifest and verifies the outputs byte for byte. Returns 0 when
/// every recorded output matches, 1 otherwise. Throws ValidationError when an
/// input file no longer matches its recorded digest.
int run_replay(const std::string& manifest_path, RunContext& ctx,
               std::optional<unsigned> workers_override);

}  // namespace linebet::cli
