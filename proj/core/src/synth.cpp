#include "linebet/synth.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "linebet/errors.hpp"
#include "linebet/rng.hpp"
#include "linebet/spread_index.hpp"

namespace linebet {
namespace {

using nlohmann::json;

int american_from_payout(double per_dollar) {
  if (per_dollar >= 1.0) return static_cast<int>(std::lround(100.0 * per_dollar));
  return -static_cast<int>(std::lround(100.0 / per_dollar));
}

MoneylineOdds sharp_odds(double p_side, double vigorish) {
  double fair = (1.0 - p_side) / p_side;
  return MoneylineOdds{american_from_payout(fair * (1.0 - vigorish))};
}

MoneylineOdds soft_odds(double p_side, double margin) {
  return MoneylineOdds{american_from_payout(((1.0 - p_side) + margin) / p_side)};
}

}  // namespace

void SynthSpec::validate() const {
  if (games < 1) throw InvalidSpec("games must be >= 1");
  if (spreads.empty()) throw InvalidSpec("at least one spread row required");
  double total_weight = 0.0;
  for (std::size_t i = 0; i < spreads.size(); ++i) {
    const SynthSpreadRow& row = spreads[i];
    if (row.spread > 0.0) throw InvalidSpec("spread rows use the favorite perspective (<= 0)");
    if (!(row.p_favorite > 0.0 && row.p_favorite < 1.0)) {
      throw InvalidSpec("p_favorite must be in (0, 1)");
    }
    if (!(row.weight > 0.0)) throw InvalidSpec("weights must be > 0");
    total_weight += row.weight;
    for (std::size_t j = 0; j < i; ++j) {
      if (SpreadIndex::spread_key(spreads[j].spread) == SpreadIndex::spread_key(row.spread)) {
        throw InvalidSpec("duplicate spread row (half-point lattice)");
      }
    }
  }
  if (!(total_weight > 0.0)) throw InvalidSpec("weights must sum to > 0");
  if (!(vigorish >= 0.0 && vigorish < 1.0)) throw InvalidSpec("vigorish must be in [0, 1)");
  if (!(soft.margin >= 0.0)) throw InvalidSpec("soft margin must be >= 0");
  if (!(soft.fraction >= 0.0 && soft.fraction <= 1.0)) {
    throw InvalidSpec("soft fraction must be in [0, 1]");
  }
  if (soft.side != "favorite" && soft.side != "underdog" && soft.side != "either") {
    throw InvalidSpec("soft side must be favorite, underdog, or either");
  }
}

SynthSpec SynthSpec::from_json_text(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) throw InvalidSpec("malformed spec JSON");

  SynthSpec spec;
  try {
    if (root.contains("league")) spec.league = League(root["league"].get<std::string>());
    spec.games = root.at("games").get<int>();
    for (const json& row : root.at("spreads")) {
      SynthSpreadRow r;
      r.spread = row.at("spread").get<double>();
      r.p_favorite = row.at("p_favorite").get<double>();
      if (row.contains("weight")) r.weight = row["weight"].get<double>();
      spec.spreads.push_back(r);
    }
    if (root.contains("vigorish")) spec.vigorish = root["vigorish"].get<double>();
    if (root.contains("soft")) {
      const json& soft = root["soft"];
      if (soft.contains("margin")) spec.soft.margin = soft["margin"].get<double>();
      if (soft.contains("fraction")) spec.soft.fraction = soft["fraction"].get<double>();
      if (soft.contains("side")) spec.soft.side = soft["side"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("bad spec JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string SynthSpec::to_json_text() const {
  json spreads_json = json::array();
  for (const SynthSpreadRow& row : spreads) {
    spreads_json.push_back(
        {{"spread", row.spread}, {"p_favorite", row.p_favorite}, {"weight", row.weight}});
  }
  json root = {
      {"league", league.tag()},
      {"games", games},
      {"spreads", std::move(spreads_json)},
      {"vigorish", vigorish},
      {"soft",
       {{"margin", soft.margin}, {"fraction", soft.fraction}, {"side", soft.side}}},
  };
  return root.dump(2) + "\n";
}

Dataset synth_market(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);

  double total_weight = 0.0;
  for (const SynthSpreadRow& row : spec.spreads) total_weight += row.weight;

  const UtcSeconds base = parse_utc("2015-01-01T18:00:00Z");
  const UtcSeconds step = 6 * 3600;  // unique, strictly increasing start times

  Dataset out;
  out.league = spec.league;
  out.source_meta.push_back("synth");
  out.games.reserve(static_cast<std::size_t>(spec.games));

  for (int i = 0; i < spec.games; ++i) {
    // A fixed number of draws per game keeps the stream alignment stable.
    double u_row = rng.next_unit();
    double u_win = rng.next_unit();
    double u_loser = rng.next_unit();
    double u_margin = rng.next_unit();
    double u_soft = rng.next_unit();
    double u_side = rng.next_unit();

    const SynthSpreadRow* row = &spec.spreads.back();
    double acc = 0.0;
    for (const SynthSpreadRow& r : spec.spreads) {
      acc += r.weight;
      if (u_row * total_weight < acc) {
        row = &r;
        break;
      }
    }

    bool favorite_won = u_win < row->p_favorite;
    int loser_points = 20 + static_cast<int>(u_loser * 20.0);
    int margin_points = 1 + static_cast<int>(u_margin * 19.0);
    int winner_points = loser_points + margin_points;

    GameRecord game;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "G%06d", i);
    game.game_id = buf;
    game.league = spec.league;
    game.start_time = base + static_cast<UtcSeconds>(i) * step;
    game.favorite = std::string("F") + std::to_string(i);
    game.underdog = std::string("U") + std::to_string(i);
    game.favorite_points = favorite_won ? winner_points : loser_points;
    game.underdog_points = favorite_won ? loser_points : winner_points;

    CasinoQuote sharp;
    sharp.casino_id = "sharp";
    sharp.favorite_spread = row->spread;
    sharp.favorite_ml = sharp_odds(row->p_favorite, spec.vigorish);
    sharp.underdog_ml = sharp_odds(1.0 - row->p_favorite, spec.vigorish);
    sharp.updated_at = game.start_time - 3600;
    game.quotes.push_back(sharp);

    if (u_soft < spec.soft.fraction) {
      bool on_favorite = spec.soft.side == "favorite" ||
                         (spec.soft.side == "either" && u_side < 0.5);
      CasinoQuote soft;
      soft.casino_id = "soft";
      soft.favorite_spread = row->spread;
      if (on_favorite) {
        soft.favorite_ml = soft_odds(row->p_favorite, spec.soft.margin);
      } else {
        soft.underdog_ml = soft_odds(1.0 - row->p_favorite, spec.soft.margin);
      }
      soft.updated_at = game.start_time - 1800;
      game.quotes.push_back(soft);
    }
    out.games.push_back(std::move(game));
  }
  return out;
}

}  // namespace linebet
