#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <optional>

#include "linebet/rng.hpp"
#include "linebet/types.hpp"
#include "linebet/valuation.hpp"

using namespace linebet;

namespace {

GameRecord game_with_quotes(std::vector<CasinoQuote> quotes) {
  GameRecord g;
  g.game_id = "G1";
  g.league = League("NFL");
  g.start_time = 1'500'000'000;
  g.favorite = "A";
  g.underdog = "B";
  g.quotes = std::move(quotes);
  return g;
}

CasinoQuote quote(std::string casino, std::optional<int> fav_ml, std::optional<int> und_ml) {
  CasinoQuote q;
  q.casino_id = std::move(casino);
  q.favorite_spread = -3.0;
  if (fav_ml) q.favorite_ml = MoneylineOdds{*fav_ml};
  if (und_ml) q.underdog_ml = MoneylineOdds{*und_ml};
  q.updated_at = 1'499'990'000;
  return q;
}

}  // namespace

TEST_CASE("payout_from_odds on known quotes") {
  CHECK(payout_from_odds({-500}).per_dollar == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(payout_from_odds({+300}).per_dollar == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(payout_from_odds({-100}).per_dollar == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(payout_from_odds({+100}).per_dollar == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(payout_from_odds({-110}).per_dollar == doctest::Approx(100.0 / 110.0).epsilon(1e-15));
}

TEST_CASE("payout_from_odds rejects the open interval (-100, 100)") {
  CHECK_THROWS_AS(payout_from_odds({0}), InvalidOdds);
  CHECK_THROWS_AS(payout_from_odds({99}), InvalidOdds);
  CHECK_THROWS_AS(payout_from_odds({-99}), InvalidOdds);
  CHECK_THROWS_AS(payout_from_odds({50}), InvalidOdds);
  CHECK_THROWS_AS(payout_from_odds({-1}), InvalidOdds);
}

TEST_CASE("break-even probability inverts American odds exactly") {
  // For -Y the implied break-even probability is Y/(Y+100); for +X it is
  // 100/(X+100). Sweep every integer quote magnitude 100..10000 on both
  // signs and demand agreement at full double precision.
  for (int mag = 100; mag <= 10'000; ++mag) {
    double minus = break_even_probability({-mag});
    double plus = break_even_probability({+mag});
    double minus_ref = static_cast<double>(mag) / (mag + 100.0);
    double plus_ref = 100.0 / (mag + 100.0);
    CHECK(std::abs(minus - minus_ref) <= 1e-15);
    CHECK(std::abs(plus - plus_ref) <= 1e-15);
    // Break-even means zero expected value there.
    CHECK(std::abs(expected_value(minus, payout_from_odds({-mag}))) <= 1e-15);
    CHECK(std::abs(expected_value(plus, payout_from_odds({+mag}))) <= 1e-15);
  }
}

TEST_CASE("expected_value on known points") {
  CHECK(expected_value(0.5, Payout{1.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(expected_value(1.0, Payout{0.2}) == doctest::Approx(0.2).epsilon(1e-15));
  // Coin flip at the standard -110 line loses one part in 22.
  CHECK(expected_value(0.5, payout_from_odds({-110})) ==
        doctest::Approx(-1.0 / 22.0).epsilon(1e-14));
  CHECK(expected_value(0.0, Payout{5.0}) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("expected_value is affine in p with slope per_dollar + 1") {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    double per = 0.05 + 5.0 * rng.next_unit();
    double p = rng.next_unit() * 0.98;
    double delta = 0.01;
    double diff = expected_value(p + delta, Payout{per}) - expected_value(p, Payout{per});
    CHECK(diff == doctest::Approx(delta * (per + 1.0)).epsilon(1e-9));
    // Closed form of the same affine map.
    CHECK(expected_value(p, Payout{per}) ==
          doctest::Approx(p * (per + 1.0) - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("best_payout takes the line shopper's maximum per side") {
  auto g = game_with_quotes({
      quote("alpha", -500, +300),
      quote("bravo", -450, +320),
  });
  CHECK(best_payout(g, Side::Favorite).per_dollar ==
        doctest::Approx(100.0 / 450.0).epsilon(1e-15));
  CHECK(best_payout(g, Side::Underdog).per_dollar == doctest::Approx(3.2).epsilon(1e-15));
}

TEST_CASE("best_payout skips quotes missing that side's moneyline") {
  auto g = game_with_quotes({
      quote("alpha", -500, std::nullopt),
      quote("bravo", std::nullopt, +250),
  });
  CHECK(best_payout(g, Side::Favorite).per_dollar == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(best_payout(g, Side::Underdog).per_dollar == doctest::Approx(2.5).epsilon(1e-15));

  auto single = game_with_quotes({quote("alpha", -120, std::nullopt)});
  CHECK(best_payout(single, Side::Favorite).per_dollar ==
        doctest::Approx(100.0 / 120.0).epsilon(1e-15));
  CHECK_THROWS_AS(best_payout(single, Side::Underdog), NoQuote);
}

TEST_CASE("decide: hand-traced cases") {
  // Both expected values negative: never bet, whatever the probabilities.
  {
    auto d = decide(-0.1, -0.2, 0.8, 0.9, 0.0, 0.0);
    CHECK(d.choice == BetChoice::NoBet);
  }
  // Probability branch fires before any EV comparison: p_f clears 0.5 + eps
  // and p_f >= p_u, so the favorite is backed despite its negative EV.
  {
    auto d = decide(-0.5, +0.4, 0.90, 0.10, 0.30, 0.0);
    CHECK(d.choice == BetChoice::Favorite);
  }
  // Probability branch misses (0.55 < 0.60); underdog has the higher EV and
  // clears tau strictly.
  {
    auto d = decide(0.02, 0.05, 0.55, 0.45, 0.10, 0.03);
    CHECK(d.choice == BetChoice::Underdog);
  }
  // Same shape on the favorite side, but the tau test is strict: 0.05 > 0.05
  // fails, so no bet.
  {
    auto d = decide(0.05, 0.02, 0.55, 0.45, 0.10, 0.05);
    CHECK(d.choice == BetChoice::NoBet);
  }
}

TEST_CASE("decide: boundary comparisons are exactly as documented") {
  // p_f == 0.5 + eps is enough (non-strict).
  CHECK(decide(-0.5, -0.0, 0.60, 0.10, 0.10, 0.0).choice == BetChoice::Favorite);
  // Probability tie backs the favorite (non-strict p_f >= p_u).
  CHECK(decide(-0.5, 0.4, 0.70, 0.70, 0.10, 0.0).choice == BetChoice::Favorite);
  // Probability branch picks the underdog when p_u is strictly higher, even
  // though the underdog EV is negative.
  CHECK(decide(0.4, -0.5, 0.70, 0.80, 0.10, 0.0).choice == BetChoice::Underdog);
  // EV tie goes to the favorite's branch (non-strict ev_f >= ev_u).
  CHECK(decide(0.04, 0.04, 0.50, 0.50, 0.10, 0.03).choice == BetChoice::Favorite);
  // tau == EV is a miss on either branch.
  CHECK(decide(0.04, 0.04, 0.50, 0.50, 0.10, 0.04).choice == BetChoice::NoBet);
  CHECK(decide(0.01, 0.04, 0.50, 0.50, 0.10, 0.04).choice == BetChoice::NoBet);
}

TEST_CASE("decide returns NoBet whenever max EV <= min(0, tau)") {
  Rng rng(77);
  int hits = 0;
  while (hits < 2000) {
    double ev_f = -1.0 + 2.0 * rng.next_unit();
    double ev_u = -1.0 + 2.0 * rng.next_unit();
    double tau = 0.25 * rng.next_unit();
    if (std::max(ev_f, ev_u) > std::min(0.0, tau)) continue;
    double p_f = rng.next_unit();
    double p_u = rng.next_unit();
    double eps = 0.5 * rng.next_unit();
    auto d = decide(ev_f, ev_u, p_f, p_u, eps, tau);
    CHECK(d.choice == BetChoice::NoBet);
    ++hits;
  }
}

TEST_CASE("decide is monotone in tau off the probability branch") {
  // Lowering tau can only keep or create a bet; it never flips the side,
  // except through the tau-independent probability branch.
  Rng rng(78);
  for (int i = 0; i < 4000; ++i) {
    double ev_f = -1.0 + 2.0 * rng.next_unit();
    double ev_u = -1.0 + 2.0 * rng.next_unit();
    double p_f = rng.next_unit();
    double p_u = rng.next_unit();
    double eps = 0.5 * rng.next_unit();
    double tau_hi = 0.5 * rng.next_unit();
    double tau_lo = tau_hi * rng.next_unit();
    auto hi = decide(ev_f, ev_u, p_f, p_u, eps, tau_hi);
    if (hi.choice == BetChoice::NoBet) continue;
    auto lo = decide(ev_f, ev_u, p_f, p_u, eps, tau_lo);
    CHECK(lo.choice == hi.choice);
  }
}

TEST_CASE("decide carries its inputs through the decision record") {
  auto d = decide(0.12, -0.3, 0.61, 0.39, 0.05, 0.0);
  CHECK(d.ev_favorite == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(d.ev_underdog == doctest::Approx(-0.3).epsilon(1e-15));
  REQUIRE(d.p_favorite.has_value());
  REQUIRE(d.p_underdog.has_value());
  CHECK(*d.p_favorite == doctest::Approx(0.61).epsilon(1e-15));
  CHECK(*d.p_underdog == doctest::Approx(0.39).epsilon(1e-15));
}
