#include <cstdio>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "linebet/errors.hpp"

using nlohmann::json;

namespace {

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moneyline betting backtester"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::string format = "json";
  unsigned workers = 1;
  app.add_option("--out", out_dir, "output directory")
      ->envname("LINEBET_OUT")
      ->capture_default_str();
  app.add_option("--format", format, "stdout rendering")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--workers", workers,
                 "threads for grid sweeps, bootstrap, and baseline replication")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string data, league, model = "simple";
  const auto add_data = [&](CLI::App* sub, bool with_model = true) {
    sub->fallthrough();
    sub->add_option("--data", data, "dataset file (.csv or .json)")->required();
    sub->add_option("--league", league, "keep only this league");
    if (with_model) {
      sub->add_option("--model", model, "win-probability model")
          ->check(CLI::IsMember({"simple", "weighted"}))
          ->capture_default_str();
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "load a dataset and report its shape");
  add_data(validate, false);
  bool dump_index = false;
  validate->add_flag("--dump-index", dump_index,
                     "also write the per-league spread index as JSON");

  CLI::App* backtest = app.add_subcommand("backtest", "run the betting rule once");
  add_data(backtest);
  double epsilon = 0.0, ev_threshold = 0.0;
  std::string ledger_style = "names";
  backtest->add_option("--epsilon", epsilon, "favorite-probability margin over 0.5")
      ->required();
  backtest->add_option("--ev-threshold", ev_threshold, "minimum mean expected value")
      ->required();
  backtest->add_option("--ledger-style", ledger_style, "ledger choice column encoding")
      ->check(CLI::IsMember({"names", "underdog-zero", "nobet-zero"}))
      ->capture_default_str();

  double epsilon_max = 0.5, epsilon_step = 0.01, ev_max = 0.0, ev_step = 0.001;
  const auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--epsilon-max", epsilon_max, "epsilon axis upper bound")
        ->capture_default_str();
    sub->add_option("--epsilon-step", epsilon_step, "epsilon axis step")
        ->capture_default_str();
    sub->add_option("--ev-max", ev_max,
                    "ev-threshold axis upper bound (default: derived from the data)");
    sub->add_option("--ev-step", ev_step, "ev-threshold axis step")->capture_default_str();
  };

  CLI::App* optimize = app.add_subcommand("optimize", "grid-search epsilon and ev-threshold");
  add_data(optimize);
  add_grid(optimize);
  bool dump_grid = false;
  optimize->add_flag("--dump-grid", dump_grid, "also write every grid cell as CSV");

  CLI::App* bootstrap = app.add_subcommand(
      "bootstrap", "confidence intervals for the optimized strategy by case resampling");
  add_data(bootstrap);
  add_grid(bootstrap);
  int iterations = 1000;
  std::uint64_t seed = 0;
  double level = 0.95, lower_level = 0.99;
  bool per_league = false;
  bootstrap->add_option("--iterations", iterations, "bootstrap resamples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bootstrap->add_option("--seed", seed, "RNG seed (default: generated and recorded)");
  bootstrap->add_option("--level", level, "two-sided interval level")
      ->capture_default_str();
  bootstrap->add_option("--lower-level", lower_level, "one-sided lower bound level")
      ->capture_default_str();
  bootstrap->add_flag("--per-league", per_league,
                      "split the dataset by league and add a joint lower-bound report");

  CLI::App* baseline = app.add_subcommand("baseline", "random-bettor reference strategies");
  add_data(baseline, false);
  std::string kind;
  double theta = 0.5;
  int replications = 10000;
  baseline->add_option("--kind", kind, "baseline strategy")
      ->check(CLI::IsMember({"spread", "moneyline"}))
      ->required();
  baseline->add_option("--theta", theta, "moneyline favorite-pick probability")
      ->capture_default_str();
  baseline->add_option("--replications", replications, "random bettors to simulate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  baseline->add_option("--seed", seed, "RNG seed (default: generated and recorded)");

  CLI::App* density = app.add_subcommand(
      "density", "histogram or averaged-shifted-histogram density from CSV columns");
  density->fallthrough();
  std::string input, x_name, y_name;
  bool ash = false, svg = false;
  double width = 0.0, width_x = 0.0, width_y = 0.0;
  int bins_x = 0, bins_y = 0, shifts_x = 5, shifts_y = 5;
  density->add_option("--input", input, "CSV file with a header row")->required();
  density->add_option("--x", x_name, "column to bin")->required();
  density->add_option("--y", y_name, "second column (bivariate ASH only)");
  density->add_flag("--ash", ash, "bivariate averaged shifted histogram over --x/--y");
  density->add_flag("--svg", svg, "also draw the result as SVG");
  density->add_option("--width", width, "histogram bin width (default: Scott's rule)");
  auto* wx = density->add_option("--width-x", width_x, "ASH kernel width, x axis");
  auto* wy = density->add_option("--width-y", width_y, "ASH kernel width, y axis");
  auto* bx = density->add_option("--bins-x", bins_x, "ASH coarse bin count, x axis")
                 ->check(CLI::PositiveNumber);
  auto* by = density->add_option("--bins-y", bins_y, "ASH coarse bin count, y axis")
                 ->check(CLI::PositiveNumber);
  wx->needs(wy);
  wy->needs(wx);
  bx->needs(by);
  by->needs(bx);
  bx->excludes(wx);
  density->add_option("--shifts-x", shifts_x, "ASH shifts per kernel width, x axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  density->add_option("--shifts-y", shifts_y, "ASH shifts per kernel width, y axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic market dataset");
  synth->fallthrough();
  std::string spec_path, data_name = "synth_data.csv";
  synth->add_option("--spec", spec_path, "market spec JSON")->required();
  synth->add_option("--seed", seed, "RNG seed (default: generated and recorded)");
  synth->add_option("--data-name", data_name, "output dataset file name")
      ->capture_default_str();

  CLI::App* replay = app.add_subcommand("replay", "re-run a manifest and diff its outputs");
  replay->fallthrough();
  std::string manifest_path;
  replay->add_option("--manifest", manifest_path, "manifest written by a previous run")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  linebet::cli::RunContext ctx;
  ctx.out_dir = out_dir;
  ctx.format = format;
  ctx.workers = workers;

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    if (name == "replay") {
      std::optional<unsigned> override;
      if (app.count("--workers") > 0) override = workers;
      return linebet::cli::run_replay(manifest_path, ctx, override);
    }

    json params;
    params["workers"] = workers;
    const CLI::Option* league_opt = sub->get_option_no_throw("--league");
    if (league_opt != nullptr && league_opt->count() > 0) params["league"] = league;
    if (name == "validate") {
      params["data"] = data;
      params["dump_index"] = dump_index;
    } else if (name == "backtest") {
      params["data"] = data;
      params["model"] = model;
      params["epsilon"] = epsilon;
      params["ev_threshold"] = ev_threshold;
      params["ledger_style"] = ledger_style;
    } else if (name == "optimize" || name == "bootstrap") {
      params["data"] = data;
      params["model"] = model;
      params["epsilon_max"] = epsilon_max;
      params["epsilon_step"] = epsilon_step;
      params["ev_step"] = ev_step;
      if (sub->count("--ev-max") > 0) params["ev_max"] = ev_max;
      if (name == "optimize") {
        params["dump_grid"] = dump_grid;
      } else {
        params["iterations"] = iterations;
        params["seed"] = sub->count("--seed") > 0 ? seed : fresh_seed();
        params["level"] = level;
        params["lower_level"] = lower_level;
        params["per_league"] = per_league;
      }
    } else if (name == "baseline") {
      params["data"] = data;
      params["kind"] = kind;
      params["theta"] = theta;
      params["replications"] = replications;
      params["seed"] = sub->count("--seed") > 0 ? seed : fresh_seed();
    } else if (name == "density") {
      params["input"] = input;
      params["x"] = x_name;
      if (sub->count("--y") > 0) params["y"] = y_name;
      params["ash"] = ash;
      params["svg"] = svg;
      if (sub->count("--width") > 0) params["width"] = width;
      if (sub->count("--width-x") > 0) {
        params["width_x"] = width_x;
        params["width_y"] = width_y;
      }
      if (sub->count("--bins-x") > 0) {
        params["bins_x"] = bins_x;
        params["bins_y"] = bins_y;
      }
      params["shifts_x"] = shifts_x;
      params["shifts_y"] = shifts_y;
    } else if (name == "synth") {
      params["spec"] = spec_path;
      params["seed"] = sub->count("--seed") > 0 ? seed : fresh_seed();
      params["data_name"] = data_name;
    }

    linebet::cli::run_subcommand(name, params, ctx);

    linebet::cli::Manifest manifest;
    manifest.subcommand = name;
    manifest.params = std::move(params);
    manifest.inputs = ctx.inputs;
    manifest.outputs = ctx.outputs;
    linebet::cli::write_text_file(ctx.out_path(name + "_manifest.json"),
                                  manifest.to_json_text());
    return 0;
  } catch (const linebet::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const linebet::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
