#include "linebet/valuation.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "linebet/errors.hpp"

namespace linebet {

Payout payout_from_odds(MoneylineOdds odds) {
  int a = odds.american;
  if (std::abs(a) < 100) {
    throw InvalidOdds("american odds " + std::to_string(a) + " out of range (|odds| >= 100)");
  }
  if (a > 0) return Payout{a / 100.0};
  return Payout{100.0 / -a};
}

double break_even_probability(MoneylineOdds odds) {
  return 1.0 / (1.0 + payout_from_odds(odds).per_dollar);
}

Payout best_payout(const GameRecord& game, Side side) {
  bool found = false;
  double best = 0.0;
  for (const CasinoQuote& q : game.quotes) {
    const std::optional<MoneylineOdds>& ml =
        side == Side::Favorite ? q.favorite_ml : q.underdog_ml;
    if (!ml) continue;
    double per = payout_from_odds(*ml).per_dollar;
    if (!found || per > best) {
      best = per;
      found = true;
    }
  }
  if (!found) {
    throw NoQuote("game " + game.game_id + ": no moneyline for the " +
                  (side == Side::Favorite ? "favorite" : "underdog"));
  }
  return Payout{best};
}

double expected_value(double p_win, Payout payout) {
  return p_win * payout.per_dollar - (1.0 - p_win);
}

BetDecision decide(double ev_favorite, double ev_underdog, double p_favorite,
                   double p_underdog, double epsilon, double ev_threshold) {
  BetDecision d;
  d.ev_favorite = ev_favorite;
  d.ev_underdog = ev_underdog;
  d.p_favorite = p_favorite;
  d.p_underdog = p_underdog;
  d.choice = BetChoice::NoBet;

  if (!(ev_favorite < 0.0 && ev_underdog < 0.0)) {
    if (p_favorite >= 0.5 + epsilon) {
      d.choice = p_favorite >= p_underdog ? BetChoice::Favorite : BetChoice::Underdog;
    } else {
      if (ev_favorite >= ev_underdog) {
        if (ev_favorite > ev_threshold) d.choice = BetChoice::Favorite;
      } else {
        if (ev_underdog > ev_threshold) d.choice = BetChoice::Underdog;
      }
    }
  }
  return d;
}

}  // namespace linebet
