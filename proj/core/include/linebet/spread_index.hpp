#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linebet/dataset.hpp"

namespace linebet {

/// Perspective from which spreads and win probabilities are expressed.
enum class Side { Favorite, Underdog };

/// Chronological win/loss history per point spread, supporting exact
/// "as of" win rates so a game is only ever priced from games that concluded
/// strictly before it started.
///
/// Keys are spreads quantized to the half-point lattice (round(2s)/2). Each
/// non-tie game contributes, for every distinct spread s it was quoted at,
/// one entry under s recording whether the favorite won and one mirror entry
/// under -s recording whether the underdog won. A game's conclusion time is
/// taken to be its start time, the earliest instant the result may be used.
class SpreadIndex {
 public:
  /// Half-point lattice key (spread in half-point units).
  static int spread_key(double spread);
  static double key_to_spread(int key);

  /// Appends an observation. Entries under one key must arrive in
  /// non-decreasing time order (build_index guarantees this).
  void add_entry(double spread, UtcSeconds concluded_at, bool won);

  /// Exact fraction of prior entries under this spread that won, counting
  /// only entries with conclusion time strictly before as_of. Absent when no
  /// such entry exists.
  std::optional<double> win_rate(double spread, UtcSeconds as_of) const;

  /// (wins, total) behind win_rate, for audits and exactness tests.
  std::pair<std::int64_t, std::int64_t> win_loss(double spread, UtcSeconds as_of) const;

  /// Audit dump: {"spread": [[iso_time, cumulative_wins, cumulative_total], ...]}.
  std::string to_json_text() const;

  std::size_t key_count() const { return histories_.size(); }

 private:
  struct KeyHistory {
    std::vector<UtcSeconds> times;        // non-decreasing
    std::vector<std::int64_t> cum_wins;   // cumulative wins through entry i
  };
  std::unordered_map<int, KeyHistory> histories_;
};

/// Builds the index from every non-tie game in the dataset.
SpreadIndex build_index(const Dataset& dataset);

/// One quoted spread of a game, seen from one side: how many casinos quote
/// it and the as-of win rate of teams previously quoted at it.
struct SpreadBucket {
  double spread = 0.0;          // quantized, perspective-signed
  int freq = 0;                 // casinos quoting this spread
  std::optional<double> prob;   // absent when the spread has no prior history
};

/// Per-game pricing inputs for one side, sorted by spread.
struct SpreadSnapshot {
  std::vector<SpreadBucket> buckets;
};

/// Collects the game's distinct quoted spreads from `side`'s perspective and
/// their win rates as of the game's start time.
SpreadSnapshot snapshot_for(const GameRecord& game, Side side, const SpreadIndex& index);

/// Unweighted mean of the defined bucket probabilities; absent when none are
/// defined.
std::optional<double> simple_probability(const SpreadSnapshot& snapshot);

/// Quote-frequency-weighted mean of the defined bucket probabilities; absent
/// when none are defined.
std::optional<double> weighted_probability(const SpreadSnapshot& snapshot);

std::optional<double> model_probability(const SpreadSnapshot& snapshot, ProbModel model);

}  // namespace linebet
