#include <benchmark/benchmark.h>

#include <vector>

#include "linebet/backtest.hpp"
#include "linebet/baselines.hpp"
#include "linebet/dataset.hpp"
#include "linebet/search.hpp"
#include "linebet/spread_index.hpp"
#include "linebet/synth.hpp"
#include "linebet/valuation.hpp"

namespace {

using namespace linebet;

Dataset bench_dataset(int games) {
  SynthSpec spec;
  spec.league = League("SYN");
  spec.games = games;
  spec.spreads = {{-0.5, 0.5, 1.0}, {-2.5, 0.6, 2.0}, {-6.5, 0.7, 1.0}};
  spec.vigorish = 0.05;
  spec.soft.margin = 0.1;
  spec.soft.fraction = 0.2;
  spec.soft.side = "favorite";
  return synth_market(spec, 99);
}

void bm_index_build(benchmark::State& state) {
  Dataset ds = bench_dataset(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SpreadIndex idx = build_index(ds);
    benchmark::DoNotOptimize(idx);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_index_build)->Arg(1000)->Arg(10000);

void bm_index_query(benchmark::State& state) {
  Dataset ds = bench_dataset(10000);
  SpreadIndex idx = build_index(ds);
  const GameRecord& last = ds.games.back();
  for (auto _ : state) {
    auto rate = idx.win_rate(-2.5, last.start_time);
    benchmark::DoNotOptimize(rate);
  }
}
BENCHMARK(bm_index_query);

void bm_decide(benchmark::State& state) {
  double mu_f = 0.02, mu_u = -0.01;
  for (auto _ : state) {
    BetDecision d = decide(mu_f, mu_u, 0.55, 0.45, 0.1, 0.015);
    benchmark::DoNotOptimize(d);
    mu_f = -mu_f;  // defeat branch prediction on the guard
  }
}
BENCHMARK(bm_decide);

void bm_backtest(benchmark::State& state) {
  Dataset ds = bench_dataset(static_cast<int>(state.range(0)));
  SpreadIndex idx = build_index(ds);
  StrategyParams params{ProbModel::Simple, 0.1, 0.01};
  for (auto _ : state) {
    BacktestReport report = run_backtest(ds, params, idx);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_backtest)->Arg(1000)->Arg(10000);

void bm_grid_search(benchmark::State& state) {
  Dataset ds = bench_dataset(10000);
  SpreadIndex idx = build_index(ds);
  std::vector<PricedGame> priced = price_dataset(ds, ProbModel::Simple, idx);
  Grid grid = Grid::regular(0.5, 0.01, 0.05, 0.001);  // 51 x 51 cells
  for (auto _ : state) {
    GridResult r = grid_search(priced, grid, 1);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 51 * 51);
  state.SetLabel("cells/s is items/s");
}
BENCHMARK(bm_grid_search)->Unit(benchmark::kMillisecond);

void bm_bootstrap_iteration(benchmark::State& state) {
  Dataset ds = bench_dataset(10000);
  SpreadIndex idx = build_index(ds);
  std::vector<PricedGame> priced = price_dataset(ds, ProbModel::Simple, idx);
  Grid grid = Grid::regular(0.5, 0.01, 0.05, 0.001);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto samples = bootstrap(priced, grid, 1, seed++, 1);
    benchmark::DoNotOptimize(samples);
  }
}
BENCHMARK(bm_bootstrap_iteration)->Unit(benchmark::kMillisecond);

void bm_baseline_replication(benchmark::State& state) {
  Dataset ds = bench_dataset(5000);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    double roi = spread_random_roi(ds, seed++);
    benchmark::DoNotOptimize(roi);
  }
  state.SetItemsProcessed(state.iterations() * 5000);
}
BENCHMARK(bm_baseline_replication);

}  // namespace

BENCHMARK_MAIN();
