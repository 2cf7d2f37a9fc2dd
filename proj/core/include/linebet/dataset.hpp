#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linebet/types.hpp"

namespace linebet {

/// An ingested, validated collection of games, sorted by (start_time,
/// game_id). `league` is the single league present, or "ALL" when the input
/// mixes leagues (use split_by_league to separate them).
struct Dataset {
  League league;
  std::vector<GameRecord> games;
  std::vector<std::string> source_meta;
};

enum class FileFormat { Csv, Json };

/// ".json" maps to Json, everything else to Csv.
FileFormat format_from_path(const std::string& path);

struct LoadOptions {
  /// Keep only this league's games (applied before the empty-input check).
  std::optional<League> league;
  /// Sink for non-fatal findings (dropped games, quote-count caps).
  /// Defaults to stderr.
  std::function<void(const std::string&)> warn;
};

/// Parses and validates a dataset. Throws ParseError (with line number for
/// CSV), ValidationError (with game id), or EmptyDataset. Games for which
/// some side has no moneyline at any casino are dropped with a warning.
Dataset load_dataset(const std::string& path, FileFormat format,
                     const LoadOptions& options = {});
Dataset load_dataset_text(const std::string& text, FileFormat format,
                          const LoadOptions& options = {});

/// Writes a dataset; load_dataset(save_dataset(d)) reproduces d
/// field-for-field.
void save_dataset(const Dataset& dataset, const std::string& path, FileFormat format);
std::string serialize_dataset(const Dataset& dataset, FileFormat format);

/// Reduces raw quotes to exactly one per casino_id, keeping the one with the
/// greatest updated_at. Idempotent; output is sorted by casino_id. Duplicates
/// of a casino at the same updated_at are resolved by the greatest
/// (spread, favorite_ml, underdog_ml) tuple so the result never depends on
/// input order.
std::vector<CasinoQuote> last_update_filter(std::vector<CasinoQuote> quotes);

/// Splits a mixed dataset into single-league datasets, ordered by league tag.
std::vector<Dataset> split_by_league(const Dataset& dataset);

}  // namespace linebet
