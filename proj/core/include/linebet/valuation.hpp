#pragma once

#include "linebet/spread_index.hpp"
#include "linebet/types.hpp"

namespace linebet {

/// Net profit per $1 staked on a winning bet.
struct Payout {
  double per_dollar = 0.0;
};

/// American odds to payout: +X pays X/100 per $1, -Y pays 100/Y per $1.
/// Throws InvalidOdds when |american| < 100.
Payout payout_from_odds(MoneylineOdds odds);

/// Probability at which a bet at these odds has zero expected value:
/// 1 / (1 + per_dollar). For +X this is 100/(X+100), for -Y it is Y/(Y+100).
double break_even_probability(MoneylineOdds odds);

/// Best available payout for a side: the maximum per-dollar payout among the
/// game's quotes that carry a moneyline for that side (the line shopper's
/// price). Throws NoQuote when no casino prices the side.
Payout best_payout(const GameRecord& game, Side side);

/// Expected net profit per $1: p_win * per_dollar - (1 - p_win). The loss
/// probability is exactly 1 - p_win; each side's probability is used
/// independently, so the two sides' probabilities need not sum to 1.
double expected_value(double p_win, Payout payout);

/// The betting rule. Given both sides' expected values and win
/// probabilities plus thresholds epsilon and tau:
///   - if both EVs are negative, never bet;
///   - else if p_f >= 0.5 + epsilon, back the side with the higher
///     probability (favorite on ties) regardless of EV;
///   - else back the side with the higher EV (favorite on ties), but only if
///     that EV strictly exceeds tau.
/// Comparisons are exactly as stated: the probability and EV-side tests are
/// non-strict, the tau test is strict.
BetDecision decide(double ev_favorite, double ev_underdog, double p_favorite,
                   double p_underdog, double epsilon, double ev_threshold);

}  // namespace linebet
