#include "linebet/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "linebet/csv.hpp"
#include "linebet/errors.hpp"
#include "linebet/numeric.hpp"
#include "linebet/parallel.hpp"
#include "linebet/rng.hpp"
#include "linebet/stats.hpp"

namespace linebet {
namespace {

// Everything a grid cell needs from one biddable game. Games that can never
// be bet (no probabilities, or both EVs negative) are excluded up front;
// what remains reproduces decide() exactly:
//   bet the probability branch when p_fav >= 0.5 + epsilon (payoff win_b),
//   else bet the EV branch when ev_sel > tau (payoff win_cd).
struct CellGame {
  double p_fav;
  double win_b;
  double ev_sel;
  double win_cd;
};

void build_cell_games(std::span<const PricedGame> games, std::vector<CellGame>& compact,
                      std::vector<std::int32_t>& map) {
  compact.clear();
  map.assign(games.size(), -1);
  for (std::size_t i = 0; i < games.size(); ++i) {
    const PricedGame& g = games[i];
    if (!g.p_favorite || !g.p_underdog) continue;
    if (g.ev_favorite < 0.0 && g.ev_underdog < 0.0) continue;

    CellGame c;
    c.p_fav = *g.p_favorite;
    BetChoice prob_side =
        *g.p_favorite >= *g.p_underdog ? BetChoice::Favorite : BetChoice::Underdog;
    c.win_b = bet_winnings(prob_side, g.victor, g.payout_favorite, g.payout_underdog);
    if (g.ev_favorite >= g.ev_underdog) {
      c.ev_sel = g.ev_favorite;
      c.win_cd = bet_winnings(BetChoice::Favorite, g.victor, g.payout_favorite,
                              g.payout_underdog);
    } else {
      c.ev_sel = g.ev_underdog;
      c.win_cd = bet_winnings(BetChoice::Underdog, g.victor, g.payout_favorite,
                              g.payout_underdog);
    }
    map[i] = static_cast<std::int32_t>(compact.size());
    compact.push_back(c);
  }
}

GridResult grid_eval(std::span<const CellGame> games, std::size_t games_total,
                     const Grid& grid, unsigned workers) {
  const std::size_t rows = grid.epsilon_values.size();
  const std::size_t cols = grid.ev_values.size();

  GridResult r;
  r.epsilon_values = grid.epsilon_values;
  r.ev_values = grid.ev_values;
  r.total_return.assign(rows * cols, 0.0);
  r.roi_pct.assign(rows * cols, 0.0);
  r.n_bets.assign(rows * cols, 0);

  parallel_for_index(rows, workers, [&](std::size_t i) {
    const double prob_cut = 0.5 + grid.epsilon_values[i];
    for (std::size_t j = 0; j < cols; ++j) {
      const double tau = grid.ev_values[j];
      NeumaierSum sum;
      int bets = 0;
      for (const CellGame& g : games) {
        if (g.p_fav >= prob_cut) {
          sum.add(g.win_b);
          ++bets;
        } else if (g.ev_sel > tau) {
          sum.add(g.win_cd);
          ++bets;
        }
      }
      const std::size_t c = i * cols + j;
      r.total_return[c] = sum.value();
      r.n_bets[c] = bets;
      if (bets > 0) r.roi_pct[c] = 100.0 * r.total_return[c] / bets;
    }
  });

  // Row-major argmax with strict improvement: ties resolve to the lowest
  // (epsilon, tau) cell.
  std::size_t best = 0;
  for (std::size_t c = 1; c < rows * cols; ++c) {
    if (r.total_return[c] > r.total_return[best]) best = c;
  }
  r.best_i = best / cols;
  r.best_j = best % cols;
  r.optimum.roi_pct = r.roi_pct[best];
  r.optimum.epsilon = r.epsilon_values[r.best_i];
  r.optimum.ev_threshold = r.ev_values[r.best_j];
  r.optimum.total_return = r.total_return[best];
  r.optimum.games_bet = r.n_bets[best];
  r.optimum.frac_bet =
      games_total == 0 ? 0.0
                       : static_cast<double>(r.n_bets[best]) / static_cast<double>(games_total);
  return r;
}

std::vector<double> regular_axis(double max, double step, const char* what) {
  if (!(step > 0.0)) throw ValidationError(std::string(what) + " step must be > 0");
  if (!(max >= 0.0)) throw ValidationError(std::string(what) + " max must be >= 0");
  auto count = static_cast<std::size_t>(std::floor(max / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = static_cast<double>(i) * step;
  return values;
}

void validate_axis(const std::vector<double>& values, double step, const char* what) {
  if (values.empty()) throw ValidationError(std::string(what) + " axis is empty");
  if (values.front() != 0.0) throw ValidationError(std::string(what) + " axis must include 0");
  if (!(step > 0.0)) throw ValidationError(std::string(what) + " step must be > 0");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw ValidationError(std::string(what) + " axis must be strictly ascending");
    }
    double multiple = values[i] / step;
    if (std::fabs(multiple - std::round(multiple)) >
        1e-12 * std::max(1.0, std::fabs(multiple))) {
      throw ValidationError(std::string(what) + " axis value " + format_double(values[i]) +
                            " is not a multiple of step " + format_double(step));
    }
  }
}

}  // namespace

Grid Grid::regular(double epsilon_max, double epsilon_step, double ev_max, double ev_step) {
  Grid g;
  g.epsilon_values = regular_axis(epsilon_max, epsilon_step, "epsilon");
  g.ev_values = regular_axis(ev_max, ev_step, "ev");
  g.epsilon_step = epsilon_step;
  g.ev_step = ev_step;
  g.validate();
  return g;
}

void Grid::validate() const {
  validate_axis(epsilon_values, epsilon_step, "epsilon");
  validate_axis(ev_values, ev_step, "ev");
  if (epsilon_values.back() > 0.5) {
    throw ValidationError("epsilon axis exceeds 0.5");
  }
}

GridResult grid_search(std::span<const PricedGame> games, const Grid& grid,
                       unsigned workers) {
  grid.validate();
  std::vector<CellGame> compact;
  std::vector<std::int32_t> map;
  build_cell_games(games, compact, map);
  return grid_eval(compact, games.size(), grid, workers);
}

GridResult grid_search(const Dataset& dataset, const Grid& grid, ProbModel model,
                       const SpreadIndex& index, unsigned workers) {
  std::vector<PricedGame> priced = price_dataset(dataset, model, index);
  return grid_search(priced, grid, workers);
}

double default_ev_max(std::span<const PricedGame> games, double step) {
  double best = 0.0;
  for (const PricedGame& g : games) {
    if (!g.p_favorite || !g.p_underdog) continue;
    best = std::max({best, g.ev_favorite, g.ev_underdog});
  }
  if (best <= 0.0) return 0.0;
  auto steps = static_cast<std::int64_t>(std::ceil(best / step - 1e-9));
  return static_cast<double>(steps) * step;
}

std::vector<BootstrapSample> bootstrap_with_sampler(std::span<const PricedGame> games,
                                                    const Grid& grid, int iterations,
                                                    const Resampler& sampler,
                                                    unsigned workers) {
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  grid.validate();

  std::vector<CellGame> compact;
  std::vector<std::int32_t> map;
  build_cell_games(games, compact, map);

  std::vector<BootstrapSample> results(static_cast<std::size_t>(iterations));
  parallel_for_index(static_cast<std::size_t>(iterations), workers, [&](std::size_t it) {
    std::vector<std::size_t> idx = sampler(static_cast<int>(it), games.size());
    std::vector<CellGame> sample;
    sample.reserve(idx.size());
    for (std::size_t k : idx) {
      if (k >= games.size()) throw ValidationError("resample index out of range");
      if (map[k] >= 0) sample.push_back(compact[static_cast<std::size_t>(map[k])]);
    }
    GridResult r = grid_eval(sample, idx.size(), grid, 1);
    results[it] = {static_cast<int>(it), r.optimum.roi_pct, r.optimum.epsilon,
                   r.optimum.ev_threshold, r.optimum.frac_bet};
  });
  return results;
}

std::vector<BootstrapSample> bootstrap(std::span<const PricedGame> games, const Grid& grid,
                                       int iterations, std::uint64_t seed,
                                       unsigned workers) {
  Resampler sampler = [seed](int iteration, std::size_t n) {
    Rng rng(seed ^ static_cast<std::uint64_t>(iteration));
    std::vector<std::size_t> idx(n);
    for (std::size_t& v : idx) v = rng.next_below(n);
    return idx;
  };
  return bootstrap_with_sampler(games, grid, iterations, sampler, workers);
}

std::string bootstrap_samples_to_csv(std::span<const BootstrapSample> samples) {
  std::string out = "iteration,opt_roi,opt_epsilon,opt_ev_threshold,frac_bet\n";
  for (const BootstrapSample& s : samples) {
    out += std::to_string(s.iteration) + ',' + format_double(s.opt_roi) + ',' +
           format_double(s.opt_epsilon) + ',' + format_double(s.opt_ev_threshold) + ',' +
           format_double(s.frac_bet) + '\n';
  }
  return out;
}

const char* interval_method_name(IntervalMethod m) {
  return m == IntervalMethod::Percentile ? "percentile" : "hdi";
}

const char* interval_sided_name(IntervalSided s) {
  return s == IntervalSided::TwoSided ? "two_sided" : "one_sided_lower";
}

const char* interval_variable_name(IntervalVariable v) {
  switch (v) {
    case IntervalVariable::Roi:
      return "roi";
    case IntervalVariable::Epsilon:
      return "epsilon";
    case IntervalVariable::EvThreshold:
      return "ev_threshold";
    case IntervalVariable::FracBet:
      return "frac_bet";
  }
  return "roi";  // unreachable
}

namespace {
void check_level(double level) {
  if (!(level > 0.0 && level <= 1.0)) throw ValidationError("level must be in (0, 1]");
}
}  // namespace

IntervalReport percentile_interval(std::vector<double> samples, double level,
                                   IntervalSided sided, IntervalVariable variable) {
  if (samples.empty()) throw EmptySamples("interval of zero samples");
  check_level(level);
  std::sort(samples.begin(), samples.end());

  IntervalReport r;
  r.variable = variable;
  r.method = IntervalMethod::Percentile;
  r.sided = sided;
  r.level = level;
  if (sided == IntervalSided::TwoSided) {
    double tail = (1.0 - level) / 2.0;
    r.low = quantile_type7_sorted(samples, tail);
    r.high = quantile_type7_sorted(samples, 1.0 - tail);
  } else {
    r.low = quantile_type7_sorted(samples, 1.0 - level);
    r.high = samples.back();
  }
  return r;
}

IntervalReport hdi_interval(std::vector<double> samples, double level,
                            IntervalVariable variable) {
  if (samples.empty()) throw EmptySamples("interval of zero samples");
  check_level(level);
  std::sort(samples.begin(), samples.end());

  const std::size_t n = samples.size();
  // ceil with a guard against FP overshoot in level*n.
  auto k = static_cast<std::size_t>(std::ceil(level * static_cast<double>(n) - 1e-9));
  k = std::min(std::max<std::size_t>(k, 1), n);

  std::size_t best = 0;
  double best_width = samples[k - 1] - samples[0];
  for (std::size_t i = 1; i + k <= n; ++i) {
    double width = samples[i + k - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }

  IntervalReport r;
  r.variable = variable;
  r.method = IntervalMethod::HighDensity;
  r.sided = IntervalSided::TwoSided;
  r.level = level;
  r.low = samples[best];
  r.high = samples[best + k - 1];
  return r;
}

std::string interval_to_json(const std::string& league, const std::string& model,
                             const IntervalReport& interval) {
  nlohmann::json root = {
      {"league", league},
      {"model", model},
      {"method", interval_method_name(interval.method)},
      {"level", interval.level},
      {"sided", interval_sided_name(interval.sided)},
      {"variable", interval_variable_name(interval.variable)},
      {"low", interval.low},
      {"high", interval.high},
  };
  return root.dump(2) + "\n";
}

BonferroniReport bonferroni_report(std::span<const LeagueInterval> intervals) {
  if (intervals.empty()) {
    throw MissingLeague("joint report needs at least one league interval");
  }
  std::set<std::string> seen;
  BonferroniReport report;
  report.joint_reject = true;
  for (const LeagueInterval& li : intervals) {
    if (li.interval.sided != IntervalSided::OneSidedLower) {
      throw ValidationError("joint report requires one-sided lower intervals");
    }
    if (!seen.insert(li.league.tag()).second) {
      throw ValidationError("duplicate league " + li.league.tag());
    }
    BonferroniLine line;
    line.league = li.league;
    line.lower = li.interval.low;
    line.reject = li.interval.low > 0.0;
    report.joint_alpha += 1.0 - li.interval.level;
    report.joint_reject = report.joint_reject && line.reject;
    report.lines.push_back(std::move(line));
  }
  return report;
}

std::string bonferroni_to_json(const BonferroniReport& report, const std::string& model,
                               const std::string& variable) {
  nlohmann::json leagues = nlohmann::json::array();
  for (const BonferroniLine& line : report.lines) {
    leagues.push_back({{"league", line.league.tag()},
                       {"lower", line.lower},
                       {"reject", line.reject}});
  }
  nlohmann::json root = {
      {"model", model},
      {"variable", variable},
      {"joint_alpha", report.joint_alpha},
      {"joint_reject", report.joint_reject},
      {"leagues", std::move(leagues)},
  };
  return root.dump(2) + "\n";
}

}  // namespace linebet
