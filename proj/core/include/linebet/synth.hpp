#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linebet/dataset.hpp"

namespace linebet {

/// One entry of the ground-truth market: games quoted at `spread` are won by
/// the favorite with probability `p_favorite`. `weight` sets how often the
/// spread is drawn relative to the other rows.
struct SynthSpreadRow {
  double spread = 0.0;  // favorite perspective, <= 0
  double p_favorite = 0.5;
  double weight = 1.0;
};

/// The mispricing channel: on `fraction` of games, the soft casino posts a
/// moneyline whose true expected value is +`margin` per $1 on the chosen
/// side ("favorite", "underdog", or "either" for a coin flip per game).
struct SynthSoft {
  double margin = 0.0;
  double fraction = 0.0;
  std::string side = "either";
};

/// Declarative synthetic market. A sharp casino prices every game at fair
/// odds shaved by `vigorish` (payout = fair * (1 - vigorish), so every sharp
/// bet has true EV -vigorish * p_lose <= 0); the soft casino optionally adds
/// a mispriced line on top.
struct SynthSpec {
  League league{std::string("SYN")};
  int games = 0;
  std::vector<SynthSpreadRow> spreads;
  double vigorish = 0.0;
  SynthSoft soft;

  void validate() const;  // throws InvalidSpec
  static SynthSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Generates a fully-populated dataset from the spec. Deterministic in
/// (spec, seed); scores always agree with the drawn winner and never tie.
Dataset synth_market(const SynthSpec& spec, std::uint64_t seed);

}  // namespace linebet
