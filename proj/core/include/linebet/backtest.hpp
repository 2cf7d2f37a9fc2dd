#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linebet/dataset.hpp"
#include "linebet/spread_index.hpp"
#include "linebet/valuation.hpp"

namespace linebet {

/// Everything needed to decide and settle one game, priced once against the
/// chronological history so later passes (grid sweeps, resampling) can reuse
/// it without touching the index again. Probabilities are absent when the
/// game had no usable spread history; such games are skipped wherever bets
/// are decided.
struct PricedGame {
  std::string game_id;
  int year = 0;
  GameVictor victor = GameVictor::Tie;
  double payout_favorite = 0.0;  // best per-$1 payout across casinos
  double payout_underdog = 0.0;
  std::optional<double> p_favorite;
  std::optional<double> p_underdog;
  double ev_favorite = 0.0;  // meaningful only when probabilities are present
  double ev_underdog = 0.0;
};

/// Prices every game in dataset order using win rates as of each game's own
/// start time.
std::vector<PricedGame> price_dataset(const Dataset& dataset, ProbModel model,
                                      const SpreadIndex& index);

/// Net winnings per $1 staked on `choice`, given the final outcome: the
/// chosen side's payout on a win, -1 on a loss, 0 on a points tie (the stake
/// is returned but the game still counts as a placed bet).
double bet_winnings(BetChoice choice, GameVictor victor, double payout_favorite,
                    double payout_underdog);

/// One placed bet. Games without a bet have no ledger entry.
struct BetLedgerEntry {
  std::string game_id;
  int year = 0;
  BetDecision decision;
  double winnings = 0.0;
};

struct YearRow {
  int year = 0;
  double roi_pct = 0.0;
  int games_bet = 0;
};

struct BacktestReport {
  std::string league;
  StrategyParams params;
  int games_analyzed = 0;
  int games_bet = 0;
  double total_return = 0.0;             // sum of ledger winnings
  std::optional<double> roi_pct;         // 100 * total_return / games_bet; absent when no bets
  std::vector<YearRow> per_year;
  std::vector<BetLedgerEntry> ledger;    // chronological
};

/// Runs the betting rule over every game in order. Games whose probabilities
/// are absent are analyzed but never bet.
BacktestReport run_backtest(const Dataset& dataset, const StrategyParams& params,
                            const SpreadIndex& index);
BacktestReport run_backtest(const std::string& league, std::span<const PricedGame> games,
                            const StrategyParams& params);

/// Calendar-year rows from a ledger, ascending by year.
std::vector<YearRow> yearly_breakdown(std::span<const BetLedgerEntry> ledger);

/// Pooled ROI of several (roi_pct, games_bet) rows: total return over total
/// bets, not a mean of the ROIs.
double pooled_roi(std::span<const YearRow> rows);

enum class ChoiceStyle { Names, UnderdogZero, NoBetZero };

/// Ledger CSV: game_id,year,choice,p_fav,p_und,ev_fav,ev_und,winnings.
std::string ledger_to_csv(std::span<const BetLedgerEntry> ledger,
                          ChoiceStyle style = ChoiceStyle::Names);

/// Report JSON (league, model, parameters, totals, per-year rows).
std::string report_to_json(const BacktestReport& report);

}  // namespace linebet
