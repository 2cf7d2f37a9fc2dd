#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "linebet/backtest.hpp"

namespace linebet {

/// Rectangular parameter grid. Both axes are ascending, start at 0, and step
/// uniformly; epsilon never exceeds 0.5.
struct Grid {
  std::vector<double> epsilon_values;
  std::vector<double> ev_values;
  double epsilon_step = 0.0;
  double ev_step = 0.0;

  /// Values i*step for i = 0..floor(max/step).
  static Grid regular(double epsilon_max, double epsilon_step, double ev_max,
                      double ev_step);

  /// Throws ValidationError when an invariant fails.
  void validate() const;
};

struct GridOptimum {
  double roi_pct = 0.0;  // 0 when the best cell has no bets
  double epsilon = 0.0;
  double ev_threshold = 0.0;
  double total_return = 0.0;
  int games_bet = 0;
  double frac_bet = 0.0;  // games_bet / games analyzed
};

/// Full sweep result. Matrices are row-major over
/// (epsilon index i, ev index j): value at i * ev_values.size() + j.
/// Cells with no bets carry total_return 0 and roi_pct 0; n_bets is the
/// mask distinguishing a true 0% ROI from an empty cell.
struct GridResult {
  std::vector<double> epsilon_values;
  std::vector<double> ev_values;
  std::vector<double> total_return;
  std::vector<double> roi_pct;
  std::vector<int> n_bets;
  std::size_t best_i = 0;  // argmax of total_return; ties to lowest (i, j)
  std::size_t best_j = 0;
  GridOptimum optimum;

  std::size_t cell(std::size_t i, std::size_t j) const { return i * ev_values.size() + j; }
};

/// Evaluates every (epsilon, tau) cell over the games in sequence order.
/// Per-cell totals add the same winnings in the same order with the same
/// compensated accumulation as run_backtest, so a cell's total_return is
/// bit-identical to run_backtest at that cell's parameters.
GridResult grid_search(std::span<const PricedGame> games, const Grid& grid,
                       unsigned workers = 1);
GridResult grid_search(const Dataset& dataset, const Grid& grid, ProbModel model,
                       const SpreadIndex& index, unsigned workers = 1);

/// Largest per-game expected value in the data (clamped to >= 0), rounded up
/// to the next multiple of `step`: the default upper bound for the tau axis.
double default_ev_max(std::span<const PricedGame> games, double step = 0.001);

struct BootstrapSample {
  int iteration = 0;
  double opt_roi = 0.0;
  double opt_epsilon = 0.0;
  double opt_ev_threshold = 0.0;
  double frac_bet = 0.0;
};

/// Case resampling: each iteration draws games.size() games with replacement
/// (indices from the iteration's own stream, Rng(seed ^ iteration)), re-runs
/// the full grid sweep on the resample, and records the optimum. Results are
/// a function of (seed, iteration) only, so any worker count returns the
/// identical vector.
std::vector<BootstrapSample> bootstrap(std::span<const PricedGame> games, const Grid& grid,
                                       int iterations, std::uint64_t seed,
                                       unsigned workers = 1);

/// Resampling hook for tests: sampler(iteration, n) returns the index
/// multiset to evaluate.
using Resampler = std::function<std::vector<std::size_t>(int iteration, std::size_t n)>;
std::vector<BootstrapSample> bootstrap_with_sampler(std::span<const PricedGame> games,
                                                    const Grid& grid, int iterations,
                                                    const Resampler& sampler,
                                                    unsigned workers = 1);

/// CSV: iteration,opt_roi,opt_epsilon,opt_ev_threshold,frac_bet.
std::string bootstrap_samples_to_csv(std::span<const BootstrapSample> samples);

enum class IntervalMethod { Percentile, HighDensity };
enum class IntervalSided { TwoSided, OneSidedLower };
enum class IntervalVariable { Roi, Epsilon, EvThreshold, FracBet };

const char* interval_method_name(IntervalMethod m);
const char* interval_sided_name(IntervalSided s);
const char* interval_variable_name(IntervalVariable v);

struct IntervalReport {
  IntervalVariable variable = IntervalVariable::Roi;
  IntervalMethod method = IntervalMethod::Percentile;
  IntervalSided sided = IntervalSided::TwoSided;
  double level = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// Equal-tail interval from type-7 quantiles. Two-sided at level L spans
/// quantiles (1-L)/2 and 1-(1-L)/2; one-sided-lower spans quantile 1-L to
/// the sample maximum. Throws EmptySamples.
IntervalReport percentile_interval(std::vector<double> samples, double level,
                                   IntervalSided sided,
                                   IntervalVariable variable = IntervalVariable::Roi);

/// Highest-density interval: the shortest window covering k = ceil(level*n)
/// consecutive sorted samples; ties go to the leftmost window. Always
/// two-sided. Throws EmptySamples.
IntervalReport hdi_interval(std::vector<double> samples, double level,
                            IntervalVariable variable = IntervalVariable::Roi);

/// One JSON object per interval row:
/// {league, model, method, level, sided, variable, low, high}.
std::string interval_to_json(const std::string& league, const std::string& model,
                             const IntervalReport& interval);

struct LeagueInterval {
  League league;
  IntervalReport interval;
};

struct BonferroniLine {
  League league;
  double lower = 0.0;
  bool reject = false;  // individual test: lower bound > 0
};

/// Joint "no profitable strategy in any league" test: each league gets a
/// one-sided lower interval at its own level, and the joint null is rejected
/// only if every league's lower bound is positive. The joint size is the sum
/// of the individual alphas (Bonferroni), reported as joint_alpha.
struct BonferroniReport {
  std::vector<BonferroniLine> lines;
  double joint_alpha = 0.0;
  bool joint_reject = false;
};

/// Throws MissingLeague when `intervals` is empty; ValidationError when an
/// interval is not one-sided-lower or leagues repeat.
BonferroniReport bonferroni_report(std::span<const LeagueInterval> intervals);

std::string bonferroni_to_json(const BonferroniReport& report, const std::string& model,
                               const std::string& variable);

}  // namespace linebet
