#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linebet/errors.hpp"
#include "linebet/time.hpp"

namespace linebet {

/// League tag. Case-normalized to upper so "nfl" and "NFL" compare equal;
/// any non-empty tag is allowed.
class League {
 public:
  League() = default;
  explicit League(const std::string& tag);
  const std::string& tag() const { return tag_; }

  friend bool operator==(const League& a, const League& b) { return a.tag_ == b.tag_; }
  friend bool operator!=(const League& a, const League& b) { return !(a == b); }
  friend bool operator<(const League& a, const League& b) { return a.tag_ < b.tag_; }

 private:
  std::string tag_;
};

/// American moneyline odds. Valid quotes satisfy |american| >= 100; the
/// bound is enforced at the ingest and payout boundaries, not here, so that
/// out-of-range values can be represented long enough to be rejected.
struct MoneylineOdds {
  int american = 0;
  friend bool operator==(const MoneylineOdds&, const MoneylineOdds&) = default;
};

/// One casino's line on a game. The spread is always quoted from the
/// favorite's perspective and is never positive. Either moneyline may be
/// absent on a given quote.
struct CasinoQuote {
  std::string casino_id;
  double favorite_spread = 0.0;  // <= 0
  std::optional<MoneylineOdds> favorite_ml;
  std::optional<MoneylineOdds> underdog_ml;
  UtcSeconds updated_at = 0;
  friend bool operator==(const CasinoQuote&, const CasinoQuote&) = default;
};

/// A concluded game with its last-update quote per casino.
struct GameRecord {
  std::string game_id;
  League league;
  UtcSeconds start_time = 0;
  std::string favorite;
  std::string underdog;
  int favorite_points = 0;
  int underdog_points = 0;
  std::vector<CasinoQuote> quotes;  // one per casino, sorted by casino_id
};

/// Final-score outcome of a game.
enum class GameVictor { Favorite, Underdog, Tie };

/// Outcome by final score; points ties are explicit, never folded into a side.
GameVictor victor_of(int favorite_points, int underdog_points);
GameVictor victor_of(const GameRecord& game);

/// Which side a strategy stakes, if any.
enum class BetChoice { Favorite, Underdog, NoBet };

/// The two integer encodings of BetChoice that appear in serialized data.
/// Both agree that favorite = +1 and disagree about the other two values:
///   UnderdogZero: no-bet = -1, underdog = 0.
///   NoBetZero:    no-bet =  0, underdog = -1.
enum class ChoiceEncoding { UnderdogZero, NoBetZero };

int choice_to_int(BetChoice choice, ChoiceEncoding enc);
/// Throws ValidationError if the integer is not in the encoding's range.
BetChoice choice_from_int(int value, ChoiceEncoding enc);

const char* choice_name(BetChoice choice);  // "favorite" / "underdog" / "nobet"
BetChoice choice_from_name(const std::string& name);

/// Non-parametric win-probability estimators: the unweighted mean over a
/// game's quoted spreads, or the quote-frequency-weighted mean.
enum class ProbModel { Simple, Weighted };

const char* model_name(ProbModel model);
ProbModel model_from_name(const std::string& name);

/// Betting-rule parameters: probability margin epsilon in [0, 0.5] and
/// expected-value threshold (>= 0) per $1 staked.
struct StrategyParams {
  ProbModel model = ProbModel::Simple;
  double epsilon = 0.0;
  double ev_threshold = 0.0;
};

/// Throws ValidationError when a parameter is out of range.
void validate_params(const StrategyParams& params);

/// A priced decision for one game. Probabilities are absent when the game
/// could not be priced (no spread history); choice is NoBet whenever both
/// expected values are negative.
struct BetDecision {
  BetChoice choice = BetChoice::NoBet;
  double ev_favorite = 0.0;
  double ev_underdog = 0.0;
  std::optional<double> p_favorite;
  std::optional<double> p_underdog;
};

}  // namespace linebet
