#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linebet/backtest.hpp"
#include "linebet/errors.hpp"
#include "linebet/synth.hpp"
#include "linebet/valuation.hpp"

using namespace linebet;

namespace {

SynthSpec coin_flip_spec(int games) {
  SynthSpec spec;
  spec.games = games;
  spec.spreads = {{-1.0, 0.5, 1.0}};
  return spec;
}

// True EV per $1 on a side, from the generator's own win probability.
double true_ev(double p_side, MoneylineOdds odds) {
  return expected_value(p_side, payout_from_odds(odds));
}

}  // namespace

TEST_CASE("generated datasets have the declared shape") {
  SynthSpec spec;
  spec.games = 300;
  spec.spreads = {{-3.0, 0.7, 3.0}, {-6.5, 0.8, 1.0}};
  spec.vigorish = 0.05;
  spec.soft.margin = 0.08;
  spec.soft.fraction = 0.5;
  spec.soft.side = "favorite";
  Dataset ds = synth_market(spec, 11);

  REQUIRE(ds.games.size() == 300);
  CHECK(ds.league.tag() == "SYN");
  UtcSeconds prev = 0;
  std::map<std::string, int> ids;
  int soft_quotes = 0;
  for (const GameRecord& g : ds.games) {
    ids[g.game_id] += 1;
    CHECK(g.start_time > prev);
    prev = g.start_time;
    // Scores never tie and always separate winner from loser.
    CHECK(g.favorite_points != g.underdog_points);
    CHECK(victor_of(g) != GameVictor::Tie);
    REQUIRE(!g.quotes.empty());
    CHECK(g.quotes[0].casino_id == "sharp");
    CHECK(g.quotes[0].favorite_spread < 0.0);
    for (const CasinoQuote& q : g.quotes) CHECK(q.updated_at < g.start_time);
    if (g.quotes.size() == 2) {
      ++soft_quotes;
      CHECK(g.quotes[1].casino_id == "soft");
      // Side "favorite": the soft line prices only that side.
      CHECK(g.quotes[1].favorite_ml.has_value());
      CHECK(!g.quotes[1].underdog_ml.has_value());
    }
  }
  CHECK(ids.size() == 300);  // unique game ids
  // Fraction 0.5 of 300 games, a binomial with sd ~8.7.
  CHECK(soft_quotes > 100);
  CHECK(soft_quotes < 200);
}

TEST_CASE("zero margin plants no positive edge") {
  // Exactly-representable fair lines (p = 0.5, 2/3, 0.6 give +-100, -200,
  // -150) keep the no-edge example sharp: every side's true EV is <= 0 up to
  // one rounding ulp.
  SynthSpec spec;
  spec.games = 400;
  spec.spreads = {{-1.0, 0.5, 1.0}, {-4.0, 2.0 / 3.0, 1.0}, {-2.5, 0.6, 1.0}};
  spec.vigorish = 0.0;
  spec.soft.margin = 0.0;
  spec.soft.fraction = 0.5;
  Dataset ds = synth_market(spec, 21);

  std::map<long, double> p_by_key = {{-2, 0.5}, {-8, 2.0 / 3.0}, {-5, 0.6}};
  for (const GameRecord& g : ds.games) {
    double p = p_by_key.at(std::lround(2.0 * g.quotes[0].favorite_spread));
    for (const CasinoQuote& q : g.quotes) {
      if (q.favorite_ml) CHECK(true_ev(p, *q.favorite_ml) <= 1e-12);
      if (q.underdog_ml) CHECK(true_ev(1.0 - p, *q.underdog_ml) <= 1e-12);
    }
  }
}

TEST_CASE("vigorish keeps every sharp line strictly unprofitable") {
  SynthSpec spec;
  spec.games = 500;
  spec.spreads = {{-3.0, 0.55, 1.0}, {-7.5, 0.82, 1.0}, {-1.5, 0.5, 2.0}};
  spec.vigorish = 0.05;
  Dataset ds = synth_market(spec, 33);
  std::map<long, double> p_by_key = {{-6, 0.55}, {-15, 0.82}, {-3, 0.5}};
  for (const GameRecord& g : ds.games) {
    REQUIRE(g.quotes.size() == 1);
    double p = p_by_key.at(std::lround(2.0 * g.quotes[0].favorite_spread));
    CHECK(true_ev(p, *g.quotes[0].favorite_ml) < 0.0);
    CHECK(true_ev(1.0 - p, *g.quotes[0].underdog_ml) < 0.0);
  }
}

TEST_CASE("soft casino posts the declared planted edge") {
  // Margin 0.1 on a true coin flip prices the favorite at +120: per $1 the
  // bet returns 2.2 gross, for a true EV of exactly +0.1.
  SynthSpec spec = coin_flip_spec(2000);
  spec.vigorish = 0.045;
  spec.soft.margin = 0.1;
  spec.soft.fraction = 1.0;
  spec.soft.side = "favorite";
  Dataset ds = synth_market(spec, 5);
  for (const GameRecord& g : ds.games) {
    REQUIRE(g.quotes.size() == 2);
    CHECK(g.quotes[1].favorite_ml == MoneylineOdds{120});
    CHECK(true_ev(0.5, *g.quotes[1].favorite_ml) == doctest::Approx(0.1).epsilon(1e-12));
  }
}

TEST_CASE("engine ev estimate converges to the planted edge") {
  // With 50k games of history at a single spread the estimated win rate
  // approaches the true 0.5, so the engine's EV on the soft +120 favorite
  // line approaches +0.1 (law of large numbers; 5 sigma of p-hat is ~0.011).
  SynthSpec spec = coin_flip_spec(50000);
  spec.vigorish = 0.045;
  spec.soft.margin = 0.1;
  spec.soft.fraction = 1.0;
  spec.soft.side = "favorite";
  Dataset ds = synth_market(spec, 97);
  SpreadIndex idx = build_index(ds);
  std::vector<PricedGame> priced = price_dataset(ds, ProbModel::Simple, idx);

  const PricedGame& last = priced.back();
  REQUIRE(last.p_favorite.has_value());
  CHECK(*last.p_favorite == doctest::Approx(0.5).epsilon(0.022));
  // The soft +120 dominates the vig-shaved sharp line, so the favorite EV is
  // computed at the planted payout.
  CHECK(last.payout_favorite == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(last.ev_favorite == doctest::Approx(0.1).epsilon(0.25));
  // Tighter: the estimate is within 5 sigma of the truth given p-hat's noise.
  double p_hat = *last.p_favorite;
  double implied = p_hat * 1.2 - (1.0 - p_hat);
  CHECK(last.ev_favorite == doctest::Approx(implied).epsilon(1e-12));
  CHECK(std::abs(last.ev_favorite - 0.1) <= 2.2 * std::abs(p_hat - 0.5) + 1e-12);
}

TEST_CASE("declared win probabilities drive outcomes") {
  SynthSpec spec;
  spec.games = 20000;
  spec.spreads = {{-5.0, 0.75, 1.0}};
  Dataset ds = synth_market(spec, 13);
  int favorite_wins = 0;
  for (const GameRecord& g : ds.games) {
    if (victor_of(g) == GameVictor::Favorite) ++favorite_wins;
  }
  // 5 sigma around 15000 at sd = sqrt(20000 * 0.1875) ~ 61.
  CHECK(favorite_wins > 14694);
  CHECK(favorite_wins < 15306);
}

TEST_CASE("spread weights set the draw frequencies") {
  SynthSpec spec;
  spec.games = 8000;
  spec.spreads = {{-3.0, 0.6, 3.0}, {-9.0, 0.8, 1.0}};
  Dataset ds = synth_market(spec, 301);
  int at_three = 0;
  for (const GameRecord& g : ds.games) {
    if (g.quotes[0].favorite_spread == -3.0) ++at_three;
  }
  // Expect 6000 of 8000; 5 sigma ~ 194.
  CHECK(at_three > 5806);
  CHECK(at_three < 6194);
}

TEST_CASE("fixed seed reproduces the dataset byte for byte") {
  SynthSpec spec;
  spec.games = 250;
  spec.spreads = {{-3.5, 0.68, 1.0}, {-1.0, 0.52, 2.0}};
  spec.vigorish = 0.03;
  spec.soft.margin = 0.06;
  spec.soft.fraction = 0.25;
  spec.soft.side = "either";
  std::string a = serialize_dataset(synth_market(spec, 42), FileFormat::Csv);
  std::string b = serialize_dataset(synth_market(spec, 42), FileFormat::Csv);
  CHECK(a == b);
  std::string c = serialize_dataset(synth_market(spec, 43), FileFormat::Csv);
  CHECK(a != c);
}

TEST_CASE("synthetic output survives the loader round trip") {
  SynthSpec spec;
  spec.games = 120;
  spec.spreads = {{-2.0, 0.58, 1.0}, {-8.5, 0.85, 0.5}};
  spec.vigorish = 0.02;
  spec.soft.margin = 0.05;
  spec.soft.fraction = 0.4;
  spec.soft.side = "underdog";
  Dataset ds = synth_market(spec, 7);
  for (FileFormat format : {FileFormat::Csv, FileFormat::Json}) {
    std::string text = serialize_dataset(ds, format);
    LoadOptions quiet;
    quiet.warn = [](const std::string&) {};
    Dataset reloaded = load_dataset_text(text, format, quiet);
    CHECK(reloaded.games.size() == ds.games.size());
    CHECK(serialize_dataset(reloaded, format) == text);
  }
}

TEST_CASE("spec validation rejects out-of-range parameters") {
  SynthSpec good = coin_flip_spec(10);
  CHECK_NOTHROW(good.validate());

  SynthSpec s = good;
  s.games = 0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.spreads.clear();
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.spreads[0].spread = 3.0;  // underdog perspective not allowed
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.spreads[0].p_favorite = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  s.spreads[0].p_favorite = 1.0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.spreads[0].weight = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.spreads.push_back({-1.0004, 0.6, 1.0});  // same half-point lattice key as -1.0
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.vigorish = 1.0;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  s.vigorish = -0.01;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.soft.margin = -0.1;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.soft.fraction = 1.5;
  CHECK_THROWS_AS(s.validate(), InvalidSpec);

  s = good;
  s.soft.side = "both";
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
}

TEST_CASE("spec json round trip") {
  SynthSpec spec;
  spec.league = League(std::string("NBA"));
  spec.games = 500;
  spec.spreads = {{-3.0, 0.7, 2.0}, {-6.0, 0.8, 1.0}};
  spec.vigorish = 0.04;
  spec.soft.margin = 0.12;
  spec.soft.fraction = 0.3;
  spec.soft.side = "underdog";

  std::string text = spec.to_json_text();
  SynthSpec back = SynthSpec::from_json_text(text);
  CHECK(back.league.tag() == "NBA");
  CHECK(back.games == 500);
  REQUIRE(back.spreads.size() == 2);
  CHECK(back.spreads[0].spread == -3.0);
  CHECK(back.spreads[0].p_favorite == 0.7);
  CHECK(back.spreads[0].weight == 2.0);
  CHECK(back.vigorish == 0.04);
  CHECK(back.soft.margin == 0.12);
  CHECK(back.soft.fraction == 0.3);
  CHECK(back.soft.side == "underdog");
  // Serialization is a fixed point.
  CHECK(back.to_json_text() == text);
}

TEST_CASE("spec json fills defaults and rejects malformed input") {
  SUBCASE("minimal document") {
    SynthSpec spec = SynthSpec::from_json_text(
        R"({"games": 5, "spreads": [{"spread": -2.0, "p_favorite": 0.6}]})");
    CHECK(spec.league.tag() == "SYN");
    CHECK(spec.spreads[0].weight == 1.0);
    CHECK(spec.vigorish == 0.0);
    CHECK(spec.soft.margin == 0.0);
    CHECK(spec.soft.fraction == 0.0);
    CHECK(spec.soft.side == "either");
  }
  SUBCASE("not json") { CHECK_THROWS_AS(SynthSpec::from_json_text("nope"), InvalidSpec); }
  SUBCASE("not an object") {
    CHECK_THROWS_AS(SynthSpec::from_json_text("[1,2]"), InvalidSpec);
  }
  SUBCASE("missing games") {
    CHECK_THROWS_AS(
        SynthSpec::from_json_text(R"({"spreads": [{"spread": -1.0, "p_favorite": 0.5}]})"),
        InvalidSpec);
  }
  SUBCASE("missing spread fields") {
    CHECK_THROWS_AS(SynthSpec::from_json_text(R"({"games": 5, "spreads": [{}]})"),
                    InvalidSpec);
  }
  SUBCASE("validation runs after parsing") {
    CHECK_THROWS_AS(SynthSpec::from_json_text(
                        R"({"games": 5, "spreads": [{"spread": -1.0, "p_favorite": 2.0}]})"),
                    InvalidSpec);
  }
}

TEST_CASE("planted edge is recoverable by the betting rule") {
  // End-to-end: soft +120 coin flips on every game; after enough history the
  // strategy at (epsilon 0.5 disabled prob branch, tau 0.02) bets the soft
  // favorites and realizes a positive return in expectation.
  SynthSpec spec = coin_flip_spec(12000);
  spec.vigorish = 0.045;
  spec.soft.margin = 0.1;
  spec.soft.fraction = 1.0;
  spec.soft.side = "favorite";
  Dataset ds = synth_market(spec, 1001);
  SpreadIndex idx = build_index(ds);
  StrategyParams params;
  params.model = ProbModel::Simple;
  params.epsilon = 0.5;
  params.ev_threshold = 0.02;
  BacktestReport report = run_backtest(ds, params, idx);
  // True edge is +10% per bet; realized mean over ~12k bets has sd ~1%, so
  // positivity is a ~10-sigma event and a generous band still binds.
  REQUIRE(report.games_bet > 5000);
  REQUIRE(report.roi_pct.has_value());
  CHECK(*report.roi_pct > 4.0);
  CHECK(*report.roi_pct < 16.0);
}
