#include "linebet/types.hpp"

#include <algorithm>
#include <cctype>

namespace linebet {

League::League(const std::string& tag) {
  for (char c : tag) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      tag_ += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  if (tag_.empty()) throw ValidationError("empty league tag");
}

GameVictor victor_of(int favorite_points, int underdog_points) {
  if (favorite_points > underdog_points) return GameVictor::Favorite;
  if (underdog_points > favorite_points) return GameVictor::Underdog;
  return GameVictor::Tie;
}

GameVictor victor_of(const GameRecord& game) {
  return victor_of(game.favorite_points, game.underdog_points);
}

int choice_to_int(BetChoice choice, ChoiceEncoding enc) {
  switch (choice) {
    case BetChoice::Favorite:
      return 1;
    case BetChoice::Underdog:
      return enc == ChoiceEncoding::UnderdogZero ? 0 : -1;
    case BetChoice::NoBet:
      return enc == ChoiceEncoding::UnderdogZero ? -1 : 0;
  }
  return 0;  // unreachable
}

BetChoice choice_from_int(int value, ChoiceEncoding enc) {
  if (value == 1) return BetChoice::Favorite;
  if (enc == ChoiceEncoding::UnderdogZero) {
    if (value == 0) return BetChoice::Underdog;
    if (value == -1) return BetChoice::NoBet;
  } else {
    if (value == -1) return BetChoice::Underdog;
    if (value == 0) return BetChoice::NoBet;
  }
  throw ValidationError("bad choice code " + std::to_string(value));
}

const char* choice_name(BetChoice choice) {
  switch (choice) {
    case BetChoice::Favorite:
      return "favorite";
    case BetChoice::Underdog:
      return "underdog";
    case BetChoice::NoBet:
      return "nobet";
  }
  return "nobet";  // unreachable
}

BetChoice choice_from_name(const std::string& name) {
  if (name == "favorite") return BetChoice::Favorite;
  if (name == "underdog") return BetChoice::Underdog;
  if (name == "nobet") return BetChoice::NoBet;
  throw ValidationError("bad choice name '" + name + "'");
}

const char* model_name(ProbModel model) {
  return model == ProbModel::Simple ? "simple" : "weighted";
}

ProbModel model_from_name(const std::string& name) {
  if (name == "simple") return ProbModel::Simple;
  if (name == "weighted") return ProbModel::Weighted;
  throw ValidationError("bad model name '" + name + "'");
}

void validate_params(const StrategyParams& params) {
  if (!(params.epsilon >= 0.0 && params.epsilon <= 0.5)) {
    throw ValidationError("epsilon must be in [0, 0.5]");
  }
  if (!(params.ev_threshold >= 0.0)) {
    throw ValidationError("ev threshold must be >= 0");
  }
}

}  // namespace linebet
