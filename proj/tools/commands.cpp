#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linebet/backtest.hpp"
#include "linebet/baselines.hpp"
#include "linebet/csv.hpp"
#include "linebet/dataset.hpp"
#include "linebet/density.hpp"
#include "linebet/errors.hpp"
#include "linebet/search.hpp"
#include "linebet/spread_index.hpp"
#include "linebet/synth.hpp"
#include "linebet/time.hpp"

namespace linebet::cli {

std::string RunContext::out_path(const std::string& name) const {
  if (out_dir.empty() || out_dir == ".") return name;
  return out_dir + "/" + name;
}

void RunContext::note_input(const std::string& path) {
  inputs.push_back({path, sha256_file(path)});
}

void RunContext::write_output(const std::string& name, std::string_view bytes) {
  if (!out_dir.empty() && out_dir != ".") {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);
  }
  write_text_file(out_path(name), bytes);
  outputs.push_back({name, sha256_hex(bytes)});
}

void RunContext::emit(std::string_view text) const {
  if (!quiet) std::fwrite(text.data(), 1, text.size(), stdout);
}

namespace {

using nlohmann::json;

Dataset load_data(const json& params, RunContext& ctx) {
  std::string path = params.at("data").get<std::string>();
  ctx.note_input(path);
  LoadOptions opts;
  if (params.contains("league") && params["league"].is_string()) {
    opts.league = League(params["league"].get<std::string>());
  }
  return load_dataset(path, format_from_path(path), opts);
}

void require_single_league(const Dataset& ds) {
  if (ds.league.tag() == "ALL") {
    throw ValidationError(
        "dataset mixes leagues; pass --league (or --per-league where supported)");
  }
}

ChoiceStyle choice_style_from_name(const std::string& name) {
  if (name == "names") return ChoiceStyle::Names;
  if (name == "underdog-zero") return ChoiceStyle::UnderdogZero;
  if (name == "nobet-zero") return ChoiceStyle::NoBetZero;
  throw ValidationError("bad ledger style '" + name + "'");
}

/// Tau-axis upper bound: an explicit --ev-max wins; otherwise the value is
/// derived from the data once and cached in the params under the league tag,
/// so a replay reuses the recorded number instead of recomputing it.
double resolve_ev_max(json& params, const std::string& tag,
                      std::span<const PricedGame> priced) {
  if (params.contains("ev_max") && params["ev_max"].is_number()) {
    return params["ev_max"].get<double>();
  }
  json& resolved = params["resolved_ev_max"];
  if (!resolved.is_object()) resolved = json::object();
  if (resolved.contains(tag)) return resolved[tag].get<double>();
  double v = default_ev_max(priced, params.at("ev_step").get<double>());
  resolved[tag] = v;
  return v;
}

Grid make_grid(json& params, const std::string& tag, std::span<const PricedGame> priced) {
  Grid grid = Grid::regular(params.at("epsilon_max").get<double>(),
                            params.at("epsilon_step").get<double>(),
                            resolve_ev_max(params, tag, priced),
                            params.at("ev_step").get<double>());
  grid.validate();
  return grid;
}

std::string opt_roi_text(const std::optional<double>& roi) {
  return roi ? format_double(*roi) : "n/a";
}

std::string text_backtest(const BacktestReport& r) {
  std::string out = "league " + r.league + "  model " + model_name(r.params.model) +
                    "  epsilon " + format_double(r.params.epsilon) + "  ev_threshold " +
                    format_double(r.params.ev_threshold) + "\n";
  out += "games_analyzed " + std::to_string(r.games_analyzed) + "  games_bet " +
         std::to_string(r.games_bet) + "  total_return " + format_double(r.total_return) +
         "  roi_pct " + opt_roi_text(r.roi_pct) + "\n";
  char line[96];
  std::snprintf(line, sizeof line, "%-6s %-14s %s\n", "year", "roi_pct", "games_bet");
  out += line;
  for (const YearRow& y : r.per_year) {
    std::snprintf(line, sizeof line, "%-6d %-14s %d\n", y.year,
                  format_double(y.roi_pct).c_str(), y.games_bet);
    out += line;
  }
  return out;
}

std::string text_optimum(const json& report) {
  const json& o = report.at("optimum");
  std::string out = "league " + report.at("league").get<std::string>() + "  model " +
                    report.at("model").get<std::string>() + "  grid " +
                    std::to_string(report.at("epsilon_values").size()) + "x" +
                    std::to_string(report.at("ev_values").size()) + "\n";
  out += "optimum epsilon " + format_double(o.at("epsilon").get<double>()) +
         "  ev_threshold " + format_double(o.at("ev_threshold").get<double>()) +
         "  total_return " + format_double(o.at("total_return").get<double>()) +
         "  roi_pct " + format_double(o.at("roi_pct").get<double>()) + "  games_bet " +
         std::to_string(o.at("games_bet").get<int>()) + "  frac_bet " +
         format_double(o.at("frac_bet").get<double>()) + "\n";
  return out;
}

std::string text_intervals(const json& rows) {
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-9s %-13s %-11s %-16s %-6s %-14s %s\n", "league",
                "model", "variable", "method", "sided", "level", "low", "high");
  std::string out = line;
  for (const json& r : rows) {
    std::snprintf(line, sizeof line, "%-8s %-9s %-13s %-11s %-16s %-6s %-14s %s\n",
                  r.at("league").get<std::string>().c_str(),
                  r.at("model").get<std::string>().c_str(),
                  r.at("variable").get<std::string>().c_str(),
                  r.at("method").get<std::string>().c_str(),
                  r.at("sided").get<std::string>().c_str(),
                  format_double(r.at("level").get<double>()).c_str(),
                  format_double(r.at("low").get<double>()).c_str(),
                  format_double(r.at("high").get<double>()).c_str());
    out += line;
  }
  return out;
}

std::string text_baseline(const BaselineReport& r) {
  return std::string("kind ") + baseline_kind_name(r.kind) + "  theta " +
         format_double(r.theta) + "  replications " + std::to_string(r.replications) +
         "  seed " + std::to_string(r.seed) + "\ngames " + std::to_string(r.games) +
         "  mean_roi " + format_double(r.mean_roi) + "  ci95 [" + format_double(r.ci_low) +
         ", " + format_double(r.ci_high) + "]\n";
}

void cmd_validate(json& params, RunContext& ctx) {
  std::string path = params.at("data").get<std::string>();
  ctx.note_input(path);
  LoadOptions opts;
  int warnings = 0;
  opts.warn = [&warnings](const std::string& msg) {
    ++warnings;
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  };
  if (params.contains("league") && params["league"].is_string()) {
    opts.league = League(params["league"].get<std::string>());
  }
  Dataset ds = load_dataset(path, format_from_path(path), opts);
  std::vector<Dataset> leagues = split_by_league(ds);

  std::set<std::string> casinos;
  for (const GameRecord& g : ds.games) {
    for (const CasinoQuote& q : g.quotes) casinos.insert(q.casino_id);
  }
  json rows = json::array();
  for (const Dataset& l : leagues) {
    rows.push_back({{"league", l.league.tag()},
                    {"games", l.games.size()},
                    {"first_start", format_utc(l.games.front().start_time)},
                    {"last_start", format_utc(l.games.back().start_time)}});
  }
  json summary = {{"path", path},
                  {"games", ds.games.size()},
                  {"casinos", casinos.size()},
                  {"warnings", warnings},
                  {"leagues", std::move(rows)}};
  std::string summary_text = summary.dump(2) + "\n";
  ctx.write_output("validate_summary.json", summary_text);

  if (params.at("dump_index").get<bool>()) {
    // Per-league win/loss audit trail: spread key -> cumulative entries.
    json dumps = json::object();
    for (const Dataset& l : leagues) {
      dumps[l.league.tag()] = json::parse(build_index(l).to_json_text());
    }
    ctx.write_output("index_dump.json", dumps.dump(2) + "\n");
  }

  if (ctx.format == "text") {
    std::string out = path + ": " + std::to_string(ds.games.size()) + " games, " +
                      std::to_string(casinos.size()) + " casinos, " +
                      std::to_string(warnings) + " warnings\n";
    for (const json& r : summary["leagues"]) {
      out += "  " + r.at("league").get<std::string>() + ": " +
             std::to_string(r.at("games").get<std::size_t>()) + " games, " +
             r.at("first_start").get<std::string>() + " .. " +
             r.at("last_start").get<std::string>() + "\n";
    }
    ctx.emit(out);
  } else {
    ctx.emit(summary_text);
  }
}

void cmd_backtest(json& params, RunContext& ctx) {
  StrategyParams sp;
  sp.model = model_from_name(params.at("model").get<std::string>());
  sp.epsilon = params.at("epsilon").get<double>();
  sp.ev_threshold = params.at("ev_threshold").get<double>();
  validate_params(sp);

  Dataset ds = load_data(params, ctx);
  require_single_league(ds);
  SpreadIndex idx = build_index(ds);
  BacktestReport report = run_backtest(ds, sp, idx);

  std::string report_text = report_to_json(report);
  ctx.write_output("backtest_report.json", report_text);
  ChoiceStyle style = choice_style_from_name(params.at("ledger_style").get<std::string>());
  ctx.write_output("backtest_ledger.csv", ledger_to_csv(report.ledger, style));
  ctx.emit(ctx.format == "text" ? text_backtest(report) : report_text);
}

void cmd_optimize(json& params, RunContext& ctx) {
  Dataset ds = load_data(params, ctx);
  require_single_league(ds);
  SpreadIndex idx = build_index(ds);
  ProbModel model = model_from_name(params.at("model").get<std::string>());
  std::vector<PricedGame> priced = price_dataset(ds, model, idx);

  Grid grid = make_grid(params, ds.league.tag(), priced);
  GridResult result = grid_search(priced, grid, ctx.workers);

  json report = {{"league", ds.league.tag()},
                 {"model", model_name(model)},
                 {"games_analyzed", priced.size()},
                 {"epsilon_values", grid.epsilon_values},
                 {"ev_values", grid.ev_values},
                 {"optimum",
                  {{"epsilon", result.optimum.epsilon},
                   {"ev_threshold", result.optimum.ev_threshold},
                   {"roi_pct", result.optimum.roi_pct},
                   {"total_return", result.optimum.total_return},
                   {"games_bet", result.optimum.games_bet},
                   {"frac_bet", result.optimum.frac_bet}}}};
  std::string report_text = report.dump(2) + "\n";
  ctx.write_output("optimize_report.json", report_text);

  if (params.at("dump_grid").get<bool>()) {
    std::string csv = "epsilon,ev_threshold,total_return,roi_pct,n_bets\n";
    for (std::size_t i = 0; i < grid.epsilon_values.size(); ++i) {
      for (std::size_t j = 0; j < grid.ev_values.size(); ++j) {
        std::size_t c = result.cell(i, j);
        csv += format_double(grid.epsilon_values[i]) + ',' +
               format_double(grid.ev_values[j]) + ',' +
               format_double(result.total_return[c]) + ',' +
               format_double(result.roi_pct[c]) + ',' + std::to_string(result.n_bets[c]) +
               '\n';
      }
    }
    ctx.write_output("optimize_grid.csv", csv);
  }
  ctx.emit(ctx.format == "text" ? text_optimum(report) : report_text);
}

void cmd_bootstrap(json& params, RunContext& ctx) {
  Dataset ds = load_data(params, ctx);
  bool per_league = params.at("per_league").get<bool>();
  std::vector<Dataset> targets;
  if (per_league) {
    targets = split_by_league(ds);
  } else {
    require_single_league(ds);
    targets.push_back(std::move(ds));
  }

  ProbModel model = model_from_name(params.at("model").get<std::string>());
  int iterations = params.at("iterations").get<int>();
  auto seed = params.at("seed").get<std::uint64_t>();
  double level = params.at("level").get<double>();
  double lower_level = params.at("lower_level").get<double>();

  json interval_rows = json::array();
  std::vector<LeagueInterval> roi_lower, epsilon_lower;

  for (Dataset& league_ds : targets) {
    const std::string tag = league_ds.league.tag();
    SpreadIndex idx = build_index(league_ds);
    std::vector<PricedGame> priced = price_dataset(league_ds, model, idx);
    Grid grid = make_grid(params, tag, priced);

    std::vector<BootstrapSample> samples =
        bootstrap(priced, grid, iterations, seed, ctx.workers);
    ctx.write_output("bootstrap_samples_" + tag + ".csv",
                     bootstrap_samples_to_csv(samples));

    std::vector<double> roi, eps, tau, frac;
    roi.reserve(samples.size());
    for (const BootstrapSample& s : samples) {
      roi.push_back(s.opt_roi);
      eps.push_back(s.opt_epsilon);
      tau.push_back(s.opt_ev_threshold);
      frac.push_back(s.frac_bet);
    }
    auto add_rows = [&](IntervalVariable var, const std::vector<double>& col) {
      interval_rows.push_back(json::parse(interval_to_json(
          tag, model_name(model),
          percentile_interval(col, level, IntervalSided::TwoSided, var))));
      interval_rows.push_back(
          json::parse(interval_to_json(tag, model_name(model), hdi_interval(col, level, var))));
    };
    add_rows(IntervalVariable::Roi, roi);
    add_rows(IntervalVariable::Epsilon, eps);
    add_rows(IntervalVariable::EvThreshold, tau);
    add_rows(IntervalVariable::FracBet, frac);

    IntervalReport roi_one = percentile_interval(roi, lower_level,
                                                 IntervalSided::OneSidedLower,
                                                 IntervalVariable::Roi);
    IntervalReport eps_one = percentile_interval(eps, lower_level,
                                                 IntervalSided::OneSidedLower,
                                                 IntervalVariable::Epsilon);
    interval_rows.push_back(json::parse(interval_to_json(tag, model_name(model), roi_one)));
    interval_rows.push_back(json::parse(interval_to_json(tag, model_name(model), eps_one)));
    roi_lower.push_back({league_ds.league, roi_one});
    epsilon_lower.push_back({league_ds.league, eps_one});
  }

  std::string intervals_text = interval_rows.dump(2) + "\n";
  ctx.write_output("bootstrap_intervals.json", intervals_text);

  if (per_league) {
    // Joint lower-bound test across leagues for the strategy return and the
    // optimal epsilon: reject only when every league clears zero.
    json joint = json::array();
    joint.push_back(json::parse(bonferroni_to_json(
        bonferroni_report(roi_lower), model_name(model),
        interval_variable_name(IntervalVariable::Roi))));
    joint.push_back(json::parse(bonferroni_to_json(
        bonferroni_report(epsilon_lower), model_name(model),
        interval_variable_name(IntervalVariable::Epsilon))));
    ctx.write_output("bootstrap_bonferroni.json", joint.dump(2) + "\n");
  }

  ctx.emit(ctx.format == "text" ? text_intervals(interval_rows) : intervals_text);
}

void cmd_baseline(json& params, RunContext& ctx) {
  Dataset ds = load_data(params, ctx);
  BaselineConfig config;
  config.kind = baseline_kind_from_name(params.at("kind").get<std::string>());
  config.theta = params.at("theta").get<double>();
  config.replications = params.at("replications").get<int>();
  config.seed = params.at("seed").get<std::uint64_t>();
  BaselineReport report = replicate_ci(ds, config, ctx.workers);
  std::string report_text = baseline_report_to_json(report);
  ctx.write_output("baseline_report.json", report_text);
  ctx.emit(ctx.format == "text" ? text_baseline(report) : report_text);
}

/// Pulls one or two numeric columns out of a headed CSV (the bootstrap dump,
/// typically). Throws ValidationError on a missing column, ParseError on a
/// bad number.
void read_columns(const std::string& text, const std::string& x_name,
                  const std::string& y_name, std::vector<double>& xs,
                  std::vector<double>& ys) {
  std::size_t pos = 0, line_no = 0;
  std::ptrdiff_t x_col = -1, y_col = -1;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line, line_no);
    if (line_no == 1) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == x_name) x_col = static_cast<std::ptrdiff_t>(i);
        if (!y_name.empty() && fields[i] == y_name) y_col = static_cast<std::ptrdiff_t>(i);
      }
      if (x_col < 0) throw ValidationError("column '" + x_name + "' not in input header");
      if (!y_name.empty() && y_col < 0) {
        throw ValidationError("column '" + y_name + "' not in input header");
      }
      continue;
    }
    auto parse_field = [&](std::ptrdiff_t col) {
      if (col >= static_cast<std::ptrdiff_t>(fields.size())) {
        throw ParseError("missing column", line_no);
      }
      const std::string& f = fields[static_cast<std::size_t>(col)];
      try {
        std::size_t used = 0;
        double v = std::stod(f, &used);
        if (used != f.size()) throw std::invalid_argument(f);
        return v;
      } catch (const std::exception&) {
        throw ParseError("bad number '" + f + "'", line_no);
      }
    };
    xs.push_back(parse_field(x_col));
    if (y_col >= 0) ys.push_back(parse_field(y_col));
  }
}

void cmd_density(json& params, RunContext& ctx) {
  std::string input = params.at("input").get<std::string>();
  ctx.note_input(input);
  std::string text = read_text_file(input);

  bool ash = params.at("ash").get<bool>();
  bool svg = params.at("svg").get<bool>();
  std::string x_name = params.at("x").get<std::string>();
  std::string y_name;
  if (ash) {
    if (!params.contains("y") || !params["y"].is_string()) {
      throw ValidationError("--ash needs --y");
    }
    y_name = params["y"].get<std::string>();
  }

  std::vector<double> xs, ys;
  read_columns(text, x_name, y_name, xs, ys);

  if (!ash) {
    std::optional<double> width;
    if (params.contains("width") && params["width"].is_number()) {
      width = params["width"].get<double>();
    }
    Histogram1D hist = histogram(xs, width);
    std::string csv = histogram_to_csv(hist);
    ctx.write_output("density_hist.csv", csv);
    if (svg) ctx.write_output("density_hist.svg", histogram_to_svg(hist));
    ctx.emit(csv);
    return;
  }

  std::pair<int, int> shifts = {params.at("shifts_x").get<int>(),
                                params.at("shifts_y").get<int>()};
  AshGrid2D grid;
  if (params.contains("bins_x") && params["bins_x"].is_number()) {
    grid = ash2d(xs, ys, {params["bins_x"].get<int>(), params.at("bins_y").get<int>()},
                 shifts);
  } else if (params.contains("width_x") && params["width_x"].is_number()) {
    grid = ash2d_widths(
        xs, ys, {params["width_x"].get<double>(), params.at("width_y").get<double>()},
        shifts);
  } else {
    grid = ash2d_scott(xs, ys, shifts);
  }
  std::string csv = ash_to_csv(grid);
  ctx.write_output("density_ash.csv", csv);
  if (svg) ctx.write_output("density_ash.svg", ash_to_svg(grid));
  ctx.emit(csv);
}

void cmd_synth(json& params, RunContext& ctx) {
  std::string spec_path = params.at("spec").get<std::string>();
  ctx.note_input(spec_path);
  SynthSpec spec = SynthSpec::from_json_text(read_text_file(spec_path));
  auto seed = params.at("seed").get<std::uint64_t>();
  Dataset ds = synth_market(spec, seed);

  std::string name = params.at("data_name").get<std::string>();
  ctx.write_output(name, serialize_dataset(ds, format_from_path(name)));

  json info = {{"file", name},
               {"league", ds.league.tag()},
               {"games", ds.games.size()},
               {"seed", seed}};
  if (ctx.format == "text") {
    ctx.emit(name + ": " + std::to_string(ds.games.size()) + " games, league " +
             ds.league.tag() + ", seed " + std::to_string(seed) + "\n");
  } else {
    ctx.emit(info.dump(2) + "\n");
  }
}

}  // namespace

void run_subcommand(const std::string& name, json& params, RunContext& ctx) {
  if (name == "validate") return cmd_validate(params, ctx);
  if (name == "backtest") return cmd_backtest(params, ctx);
  if (name == "optimize") return cmd_optimize(params, ctx);
  if (name == "bootstrap") return cmd_bootstrap(params, ctx);
  if (name == "baseline") return cmd_baseline(params, ctx);
  if (name == "density") return cmd_density(params, ctx);
  if (name == "synth") return cmd_synth(params, ctx);
  throw ValidationError("unknown subcommand '" + name + "'");
}

int run_replay(const std::string& manifest_path, RunContext& ctx,
               std::optional<unsigned> workers_override) {
  Manifest manifest = Manifest::from_json_text(read_text_file(manifest_path));

  for (const FileDigest& in : manifest.inputs) {
    if (sha256_file(in.path) != in.sha256) {
      throw ValidationError("input " + in.path +
                            " no longer matches the digest recorded in the manifest");
    }
  }

  json params = manifest.params;
  if (workers_override) {
    ctx.workers = *workers_override;
  } else if (params.contains("workers") && params["workers"].is_number()) {
    ctx.workers = params["workers"].get<unsigned>();
  }
  ctx.quiet = true;
  run_subcommand(manifest.subcommand, params, ctx);

  std::map<std::string, std::string> produced;
  for (const FileDigest& out : ctx.outputs) produced[out.path] = out.sha256;

  int mismatches = 0;
  for (const FileDigest& recorded : manifest.outputs) {
    auto it = produced.find(recorded.path);
    bool ok = it != produced.end() && it->second == recorded.sha256;
    std::printf("%s %s\n", ok ? "match    " : "MISMATCH ", recorded.path.c_str());
    if (!ok) ++mismatches;
    if (it != produced.end()) produced.erase(it);
  }
  for (const auto& [name, digest] : produced) {
    (void)digest;
    std::printf("UNEXPECTED %s\n", name.c_str());
    ++mismatches;
  }
  return mismatches == 0 ? 0 : 1;
}

}  // namespace linebet::cli
