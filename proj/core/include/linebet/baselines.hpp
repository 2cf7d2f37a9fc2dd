#pragma once

#include <cstdint>
#include <string>

#include "linebet/dataset.hpp"

namespace linebet {

/// Uninformed reference strategies the engine must beat.
enum class BaselineKind { SpreadPick, MoneylinePick };

const char* baseline_kind_name(BaselineKind kind);
BaselineKind baseline_kind_from_name(const std::string& name);

/// One replication of the random against-the-spread bettor: every game gets
/// a uniform coin-flip pick at the standard -110 price (pays 100/110).
/// The pick covers when its side beats the game's most favorable spread for
/// that side (the line shopper's line); equal margins push and pay 0 but
/// still count as placed bets. Returns ROI as a percentage over all games.
double spread_random_roi(const Dataset& dataset, std::uint64_t seed);

/// One replication of the random moneyline bettor: each game independently
/// picks the favorite with probability theta (in [0, 1]) at the best
/// available payout for the picked side; points ties pay 0. Returns ROI as a
/// percentage over all games.
double moneyline_random_roi(const Dataset& dataset, double theta, std::uint64_t seed);

struct BaselineConfig {
  BaselineKind kind = BaselineKind::SpreadPick;
  double theta = 0.5;       // moneyline variant only
  int replications = 10000;
  std::uint64_t seed = 0;
};

struct BaselineReport {
  BaselineKind kind = BaselineKind::SpreadPick;
  double theta = 0.5;
  int replications = 0;
  std::uint64_t seed = 0;
  int games = 0;
  double mean_roi = 0.0;
  double ci_low = 0.0;   // 2.5th percentile of replication ROIs
  double ci_high = 0.0;  // 97.5th percentile
};

/// Runs `replications` independent replications, each on its own stream
/// Rng(seed ^ replication), and summarizes mean and the central 95%
/// percentile interval. Identical for any worker count.
BaselineReport replicate_ci(const Dataset& dataset, const BaselineConfig& config,
                            unsigned workers = 1);

/// {kind, theta, replications, seed, games, mean_roi, ci95: [low, high]}.
std::string baseline_report_to_json(const BaselineReport& report);

}  // namespace linebet
