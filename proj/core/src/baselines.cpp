#include "linebet/baselines.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "linebet/errors.hpp"
#include "linebet/numeric.hpp"
#include "linebet/parallel.hpp"
#include "linebet/rng.hpp"
#include "linebet/stats.hpp"
#include "linebet/valuation.hpp"

namespace linebet {
namespace {

constexpr double kStandardSpreadPayout = 100.0 / 110.0;

enum class CoverOutcome { Favorite, Underdog, Push };

// Against-the-spread result at each side's most favorable line. With the
// favorite spread f <= 0, the favorite covers at f when it wins by more
// than -f points; the underdog covers at cushion u when it loses by less
// than u (or wins).
CoverOutcome cover_outcome(const GameRecord& game) {
  if (game.quotes.empty()) throw MissingSpread("game " + game.game_id + ": no quotes");
  double best_fav = game.quotes.front().favorite_spread;
  double worst_fav = best_fav;
  for (const CasinoQuote& q : game.quotes) {
    best_fav = std::max(best_fav, q.favorite_spread);
    worst_fav = std::min(worst_fav, q.favorite_spread);
  }
  double fav_line = best_fav;        // smallest handicap the favorite can get
  double und_cushion = -worst_fav;   // largest cushion the underdog can get

  double pf = game.favorite_points;
  double pu = game.underdog_points;
  if (pf + fav_line > pu) return CoverOutcome::Favorite;
  if (pu + und_cushion > pf) return CoverOutcome::Underdog;
  return CoverOutcome::Push;
}

}  // namespace

const char* baseline_kind_name(BaselineKind kind) {
  return kind == BaselineKind::SpreadPick ? "spread" : "moneyline";
}

BaselineKind baseline_kind_from_name(const std::string& name) {
  if (name == "spread") return BaselineKind::SpreadPick;
  if (name == "moneyline") return BaselineKind::MoneylinePick;
  throw ValidationError("bad baseline kind '" + name + "'");
}

double spread_random_roi(const Dataset& dataset, std::uint64_t seed) {
  if (dataset.games.empty()) throw EmptyDataset("baseline over zero games");
  Rng rng(seed);
  NeumaierSum sum;
  for (const GameRecord& game : dataset.games) {
    CoverOutcome outcome = cover_outcome(game);
    bool pick_favorite = rng.next_unit() > 0.5;
    if (outcome == CoverOutcome::Push) continue;  // graded 0, still a bet
    bool won = (outcome == CoverOutcome::Favorite) == pick_favorite;
    sum.add(won ? kStandardSpreadPayout : -1.0);
  }
  return 100.0 * sum.value() / static_cast<double>(dataset.games.size());
}

double moneyline_random_roi(const Dataset& dataset, double theta, std::uint64_t seed) {
  if (dataset.games.empty()) throw EmptyDataset("baseline over zero games");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError("theta must be in [0, 1]");
  Rng rng(seed);
  NeumaierSum sum;
  for (const GameRecord& game : dataset.games) {
    GameVictor victor = victor_of(game);
    bool pick_favorite = rng.next_unit() < theta;
    if (victor == GameVictor::Tie) continue;  // graded 0, still a bet
    if (pick_favorite) {
      sum.add(victor == GameVictor::Favorite ? best_payout(game, Side::Favorite).per_dollar
                                             : -1.0);
    } else {
      sum.add(victor == GameVictor::Underdog ? best_payout(game, Side::Underdog).per_dollar
                                             : -1.0);
    }
  }
  return 100.0 * sum.value() / static_cast<double>(dataset.games.size());
}

BaselineReport replicate_ci(const Dataset& dataset, const BaselineConfig& config,
                            unsigned workers) {
  if (config.replications < 1) throw ValidationError("replications must be >= 1");

  std::vector<double> rois(static_cast<std::size_t>(config.replications));
  parallel_for_index(rois.size(), workers, [&](std::size_t r) {
    std::uint64_t stream = config.seed ^ static_cast<std::uint64_t>(r);
    rois[r] = config.kind == BaselineKind::SpreadPick
                  ? spread_random_roi(dataset, stream)
                  : moneyline_random_roi(dataset, config.theta, stream);
  });

  NeumaierSum sum;
  for (double v : rois) sum.add(v);

  BaselineReport report;
  report.kind = config.kind;
  report.theta = config.theta;
  report.replications = config.replications;
  report.seed = config.seed;
  report.games = static_cast<int>(dataset.games.size());
  report.mean_roi = sum.value() / static_cast<double>(config.replications);
  std::sort(rois.begin(), rois.end());
  report.ci_low = quantile_type7_sorted(rois, 0.025);
  report.ci_high = quantile_type7_sorted(rois, 0.975);
  return report;
}

std::string baseline_report_to_json(const BaselineReport& report) {
  nlohmann::json root = {
      {"kind", baseline_kind_name(report.kind)},
      {"theta", report.theta},
      {"replications", report.replications},
      {"seed", report.seed},
      {"games", report.games},
      {"mean_roi", report.mean_roi},
      {"ci95", {report.ci_low, report.ci_high}},
  };
  return root.dump(2) + "\n";
}

}  // namespace linebet
