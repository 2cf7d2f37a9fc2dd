#include "linebet/backtest.hpp"

#include <map>

#include <nlohmann/json.hpp>

#include "linebet/csv.hpp"
#include "linebet/errors.hpp"
#include "linebet/numeric.hpp"

namespace linebet {

std::vector<PricedGame> price_dataset(const Dataset& dataset, ProbModel model,
                                      const SpreadIndex& index) {
  std::vector<PricedGame> out;
  out.reserve(dataset.games.size());
  for (const GameRecord& game : dataset.games) {
    PricedGame pg;
    pg.game_id = game.game_id;
    pg.year = utc_year(game.start_time);
    pg.victor = victor_of(game);
    pg.payout_favorite = best_payout(game, Side::Favorite).per_dollar;
    pg.payout_underdog = best_payout(game, Side::Underdog).per_dollar;
    pg.p_favorite = model_probability(snapshot_for(game, Side::Favorite, index), model);
    pg.p_underdog = model_probability(snapshot_for(game, Side::Underdog, index), model);
    if (pg.p_favorite && pg.p_underdog) {
      pg.ev_favorite = expected_value(*pg.p_favorite, Payout{pg.payout_favorite});
      pg.ev_underdog = expected_value(*pg.p_underdog, Payout{pg.payout_underdog});
    }
    out.push_back(std::move(pg));
  }
  return out;
}

double bet_winnings(BetChoice choice, GameVictor victor, double payout_favorite,
                    double payout_underdog) {
  if (choice == BetChoice::NoBet) return 0.0;
  if (victor == GameVictor::Tie) return 0.0;
  if (choice == BetChoice::Favorite) {
    return victor == GameVictor::Favorite ? payout_favorite : -1.0;
  }
  return victor == GameVictor::Underdog ? payout_underdog : -1.0;
}

BacktestReport run_backtest(const std::string& league, std::span<const PricedGame> games,
                            const StrategyParams& params) {
  validate_params(params);

  BacktestReport report;
  report.league = league;
  report.params = params;
  report.games_analyzed = static_cast<int>(games.size());

  NeumaierSum total;
  for (const PricedGame& g : games) {
    if (!g.p_favorite || !g.p_underdog) continue;  // unpriceable: analyzed, never bet
    BetDecision d = decide(g.ev_favorite, g.ev_underdog, *g.p_favorite, *g.p_underdog,
                           params.epsilon, params.ev_threshold);
    if (d.choice == BetChoice::NoBet) continue;
    double w = bet_winnings(d.choice, g.victor, g.payout_favorite, g.payout_underdog);
    total.add(w);
    report.ledger.push_back({g.game_id, g.year, d, w});
  }

  report.games_bet = static_cast<int>(report.ledger.size());
  report.total_return = total.value();
  if (report.games_bet > 0) {
    report.roi_pct = 100.0 * report.total_return / report.games_bet;
  }
  report.per_year = yearly_breakdown(report.ledger);
  return report;
}

BacktestReport run_backtest(const Dataset& dataset, const StrategyParams& params,
                            const SpreadIndex& index) {
  if (dataset.games.empty()) throw EmptyDataset("no games to backtest");
  std::vector<PricedGame> priced = price_dataset(dataset, params.model, index);
  return run_backtest(dataset.league.tag(), priced, params);
}

std::vector<YearRow> yearly_breakdown(std::span<const BetLedgerEntry> ledger) {
  std::map<int, std::pair<NeumaierSum, int>> years;
  for (const BetLedgerEntry& e : ledger) {
    auto& [sum, n] = years[e.year];
    sum.add(e.winnings);
    n += 1;
  }
  std::vector<YearRow> out;
  out.reserve(years.size());
  for (const auto& [year, agg] : years) {
    out.push_back({year, 100.0 * agg.first.value() / agg.second, agg.second});
  }
  return out;
}

double pooled_roi(std::span<const YearRow> rows) {
  NeumaierSum total;
  std::int64_t n = 0;
  for (const YearRow& r : rows) {
    total.add(r.roi_pct / 100.0 * r.games_bet);
    n += r.games_bet;
  }
  if (n == 0) return 0.0;
  return 100.0 * total.value() / static_cast<double>(n);
}

std::string ledger_to_csv(std::span<const BetLedgerEntry> ledger, ChoiceStyle style) {
  std::string out = "game_id,year,choice,p_fav,p_und,ev_fav,ev_und,winnings\n";
  for (const BetLedgerEntry& e : ledger) {
    std::string choice;
    if (style == ChoiceStyle::Names) {
      choice = choice_name(e.decision.choice);
    } else {
      ChoiceEncoding enc = style == ChoiceStyle::UnderdogZero ? ChoiceEncoding::UnderdogZero
                                                              : ChoiceEncoding::NoBetZero;
      choice = std::to_string(choice_to_int(e.decision.choice, enc));
    }
    out += csv_escape(e.game_id) + ',' + std::to_string(e.year) + ',' + choice + ',' +
           (e.decision.p_favorite ? format_double(*e.decision.p_favorite) : "") + ',' +
           (e.decision.p_underdog ? format_double(*e.decision.p_underdog) : "") + ',' +
           format_double(e.decision.ev_favorite) + ',' +
           format_double(e.decision.ev_underdog) + ',' + format_double(e.winnings) + '\n';
  }
  return out;
}

std::string report_to_json(const BacktestReport& report) {
  nlohmann::json per_year = nlohmann::json::array();
  for (const YearRow& r : report.per_year) {
    per_year.push_back(
        {{"year", r.year}, {"roi_pct", r.roi_pct}, {"games_bet", r.games_bet}});
  }
  nlohmann::json root = {
      {"league", report.league},
      {"model", model_name(report.params.model)},
      {"epsilon", report.params.epsilon},
      {"ev_threshold", report.params.ev_threshold},
      {"games_analyzed", report.games_analyzed},
      {"games_bet", report.games_bet},
      {"total_return", report.total_return},
      {"roi_pct", report.roi_pct ? nlohmann::json(*report.roi_pct) : nlohmann::json(nullptr)},
      {"per_year", std::move(per_year)},
  };
  return root.dump(2) + "\n";
}

}  // namespace linebet
