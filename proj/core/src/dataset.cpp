#include "linebet/dataset.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "linebet/csv.hpp"
#include "linebet/errors.hpp"

namespace linebet {
namespace {

using nlohmann::json;

constexpr const char* kHeader =
    "game_id,league,start_time,favorite,underdog,fav_points,und_points,"
    "casino_id,fav_spread,fav_ml,und_ml,updated_at";
constexpr int kQuoteCap = 16;

void default_warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

int parse_int(const std::string& text, const char* what, std::size_t line,
              const std::string& game_id) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    if (line) throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
    throw ValidationError(std::string("bad ") + what + " '" + text + "'", game_id);
  }
}

double parse_spread(const std::string& text, std::size_t line, const std::string& game_id) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(v)) {
    if (line) throw ParseError("bad spread '" + text + "'", line);
    throw ValidationError("bad spread '" + text + "'", game_id);
  }
  return v;
}

std::optional<MoneylineOdds> parse_ml(const std::string& text, std::size_t line,
                                      const std::string& game_id) {
  if (text.empty()) return std::nullopt;
  int v = parse_int(text, "moneyline", line, game_id);
  if (std::abs(v) < 100) {
    throw ValidationError("moneyline " + text + " out of range (|odds| >= 100)", game_id);
  }
  return MoneylineOdds{v};
}

// Mutable game fields accumulated across rows of one game_id.
struct GameBuild {
  GameRecord record;
  bool seen = false;
};

void merge_game_fields(GameBuild& build, const GameRecord& fields) {
  if (!build.seen) {
    build.record = fields;
    build.seen = true;
    return;
  }
  GameRecord& r = build.record;
  if (r.league != fields.league || r.start_time != fields.start_time ||
      r.favorite != fields.favorite || r.underdog != fields.underdog ||
      r.favorite_points != fields.favorite_points ||
      r.underdog_points != fields.underdog_points) {
    throw ValidationError("inconsistent game fields across rows", fields.game_id);
  }
}

void validate_quote(const CasinoQuote& quote, UtcSeconds start_time,
                    const std::string& game_id) {
  if (quote.casino_id.empty()) throw ValidationError("empty casino_id", game_id);
  if (quote.favorite_spread > 0.0) {
    throw ValidationError("favorite spread " + format_double(quote.favorite_spread) +
                              " is positive (favorite perspective requires <= 0)",
                          game_id);
  }
  if (!(quote.updated_at < start_time)) {
    throw ValidationError("quote from casino " + quote.casino_id +
                              " updated at/after start time",
                          game_id);
  }
}

Dataset assemble(std::map<std::string, GameBuild>&& builds,
                 std::map<std::string, std::vector<CasinoQuote>>&& raw_quotes,
                 const LoadOptions& options, std::string source_tag) {
  auto warn = options.warn ? options.warn : default_warn;

  Dataset out;
  out.source_meta.push_back(std::move(source_tag));
  for (auto& [game_id, build] : builds) {
    GameRecord& game = build.record;
    if (options.league && game.league != *options.league) continue;

    game.quotes = last_update_filter(std::move(raw_quotes[game_id]));
    if (game.quotes.empty()) throw ValidationError("no quotes", game_id);
    if (static_cast<int>(game.quotes.size()) > kQuoteCap) {
      warn("game " + game_id + ": " + std::to_string(game.quotes.size()) +
           " casinos quoted (expected at most " + std::to_string(kQuoteCap) + ")");
    }

    bool fav_priced = false, und_priced = false;
    for (const CasinoQuote& q : game.quotes) {
      validate_quote(q, game.start_time, game_id);
      fav_priced = fav_priced || q.favorite_ml.has_value();
      und_priced = und_priced || q.underdog_ml.has_value();
    }
    if (!fav_priced || !und_priced) {
      warn("game " + game_id + ": no moneyline for the " +
           (fav_priced ? "underdog" : "favorite") + " at any casino, dropped");
      continue;
    }
    out.games.push_back(std::move(game));
  }

  if (out.games.empty()) throw EmptyDataset("input contains no priced games");

  std::sort(out.games.begin(), out.games.end(),
            [](const GameRecord& a, const GameRecord& b) {
              return std::tie(a.start_time, a.game_id) < std::tie(b.start_time, b.game_id);
            });

  bool mixed = false;
  for (const GameRecord& g : out.games) {
    if (g.league != out.games.front().league) mixed = true;
  }
  out.league = mixed ? League("ALL") : out.games.front().league;
  return out;
}

Dataset parse_csv(const std::string& text, const LoadOptions& options) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw EmptyDataset("empty CSV input");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw ParseError("bad header (expected '" + std::string(kHeader) + "')", line_no);
  }

  std::map<std::string, GameBuild> builds;
  std::map<std::string, std::vector<CasinoQuote>> raw_quotes;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv_line(line, line_no);
    if (f.size() != 12) {
      throw ParseError("expected 12 fields, got " + std::to_string(f.size()), line_no);
    }
    const std::string& game_id = f[0];
    if (game_id.empty()) throw ParseError("empty game_id", line_no);

    GameRecord fields;
    fields.game_id = game_id;
    try {
      fields.league = League(f[1]);
      fields.start_time = parse_utc(f[2]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    fields.favorite = f[3];
    fields.underdog = f[4];
    if (fields.favorite.empty() || fields.underdog.empty()) {
      throw ParseError("empty team name", line_no);
    }
    fields.favorite_points = parse_int(f[5], "fav_points", line_no, game_id);
    fields.underdog_points = parse_int(f[6], "und_points", line_no, game_id);
    if (fields.favorite_points < 0 || fields.underdog_points < 0) {
      throw ValidationError("negative points", game_id);
    }

    CasinoQuote quote;
    quote.casino_id = f[7];
    quote.favorite_spread = parse_spread(f[8], line_no, game_id);
    quote.favorite_ml = parse_ml(f[9], line_no, game_id);
    quote.underdog_ml = parse_ml(f[10], line_no, game_id);
    try {
      quote.updated_at = parse_utc(f[11]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }

    merge_game_fields(builds[game_id], fields);
    raw_quotes[game_id].push_back(std::move(quote));
  }

  if (builds.empty()) throw EmptyDataset("CSV contains no data rows");
  return assemble(std::move(builds), std::move(raw_quotes), options, "csv");
}

std::string get_string(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw ParseError("missing or non-string '" + std::string(key) + "' in " + ctx);
  }
  return obj[key].get<std::string>();
}

int get_int(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw ParseError("missing or non-integer '" + std::string(key) + "' in " + ctx);
  }
  return obj[key].get<int>();
}

Dataset parse_json(const std::string& text, const LoadOptions& options) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw ParseError("malformed JSON");
  if (!root.is_array()) throw ParseError("top-level JSON value must be an array of games");
  if (root.empty()) throw EmptyDataset("JSON contains no games");

  std::map<std::string, GameBuild> builds;
  std::map<std::string, std::vector<CasinoQuote>> raw_quotes;

  for (const json& g : root) {
    if (!g.is_object()) throw ParseError("game entries must be objects");
    std::string game_id = get_string(g, "game_id", "game");
    const std::string ctx = "game " + game_id;

    GameRecord fields;
    fields.game_id = game_id;
    fields.league = League(get_string(g, "league", ctx));
    fields.start_time = parse_utc(get_string(g, "start_time", ctx));
    fields.favorite = get_string(g, "favorite", ctx);
    fields.underdog = get_string(g, "underdog", ctx);
    if (fields.favorite.empty() || fields.underdog.empty()) {
      throw ValidationError("empty team name", game_id);
    }
    fields.favorite_points = get_int(g, "fav_points", ctx);
    fields.underdog_points = get_int(g, "und_points", ctx);
    if (fields.favorite_points < 0 || fields.underdog_points < 0) {
      throw ValidationError("negative points", game_id);
    }

    if (!g.contains("quotes") || !g["quotes"].is_array() || g["quotes"].empty()) {
      throw ValidationError("missing quotes array", game_id);
    }
    for (const json& q : g["quotes"]) {
      CasinoQuote quote;
      quote.casino_id = get_string(q, "casino_id", ctx);
      if (!q.contains("fav_spread") || !q["fav_spread"].is_number()) {
        throw ParseError("missing or non-numeric 'fav_spread' in " + ctx);
      }
      quote.favorite_spread = q["fav_spread"].get<double>();
      if (q.contains("fav_ml") && !q["fav_ml"].is_null()) {
        quote.favorite_ml = parse_ml(q["fav_ml"].is_string()
                                         ? q["fav_ml"].get<std::string>()
                                         : std::to_string(q["fav_ml"].get<int>()),
                                     0, game_id);
      }
      if (q.contains("und_ml") && !q["und_ml"].is_null()) {
        quote.underdog_ml = parse_ml(q["und_ml"].is_string()
                                         ? q["und_ml"].get<std::string>()
                                         : std::to_string(q["und_ml"].get<int>()),
                                     0, game_id);
      }
      quote.updated_at = parse_utc(get_string(q, "updated_at", ctx));
      raw_quotes[game_id].push_back(std::move(quote));
    }
    merge_game_fields(builds[game_id], fields);
  }
  return assemble(std::move(builds), std::move(raw_quotes), options, "json");
}

}  // namespace

FileFormat format_from_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return FileFormat::Json;
  return FileFormat::Csv;
}

Dataset load_dataset_text(const std::string& text, FileFormat format,
                          const LoadOptions& options) {
  return format == FileFormat::Csv ? parse_csv(text, options) : parse_json(text, options);
}

Dataset load_dataset(const std::string& path, FileFormat format,
                     const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Dataset d = load_dataset_text(buf.str(), format, options);
  d.source_meta.back() = path;
  return d;
}

std::string serialize_dataset(const Dataset& dataset, FileFormat format) {
  if (format == FileFormat::Csv) {
    std::string out = std::string(kHeader) + "\n";
    for (const GameRecord& g : dataset.games) {
      for (const CasinoQuote& q : g.quotes) {
        out += csv_escape(g.game_id) + ',' + csv_escape(g.league.tag()) + ',' +
               format_utc(g.start_time) + ',' + csv_escape(g.favorite) + ',' +
               csv_escape(g.underdog) + ',' + std::to_string(g.favorite_points) + ',' +
               std::to_string(g.underdog_points) + ',' + csv_escape(q.casino_id) + ',' +
               format_double(q.favorite_spread) + ',' +
               (q.favorite_ml ? std::to_string(q.favorite_ml->american) : "") + ',' +
               (q.underdog_ml ? std::to_string(q.underdog_ml->american) : "") + ',' +
               format_utc(q.updated_at) + '\n';
      }
    }
    return out;
  }

  json root = json::array();
  for (const GameRecord& g : dataset.games) {
    json quotes = json::array();
    for (const CasinoQuote& q : g.quotes) {
      json jq = {{"casino_id", q.casino_id},
                 {"fav_spread", q.favorite_spread},
                 {"updated_at", format_utc(q.updated_at)}};
      jq["fav_ml"] = q.favorite_ml ? json(q.favorite_ml->american) : json(nullptr);
      jq["und_ml"] = q.underdog_ml ? json(q.underdog_ml->american) : json(nullptr);
      quotes.push_back(std::move(jq));
    }
    root.push_back({{"game_id", g.game_id},
                    {"league", g.league.tag()},
                    {"start_time", format_utc(g.start_time)},
                    {"favorite", g.favorite},
                    {"underdog", g.underdog},
                    {"fav_points", g.favorite_points},
                    {"und_points", g.underdog_points},
                    {"quotes", std::move(quotes)}});
  }
  return root.dump(2) + "\n";
}

void save_dataset(const Dataset& dataset, const std::string& path, FileFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_dataset(dataset, format);
  if (!out) throw IoError("write failed for " + path);
}

std::vector<CasinoQuote> last_update_filter(std::vector<CasinoQuote> quotes) {
  std::map<std::string, CasinoQuote> best;
  for (CasinoQuote& q : quotes) {
    auto it = best.find(q.casino_id);
    if (it == best.end()) {
      best.emplace(q.casino_id, std::move(q));
      continue;
    }
    const CasinoQuote& cur = it->second;
    auto key = [](const CasinoQuote& c) {
      return std::make_tuple(c.updated_at, c.favorite_spread,
                             c.favorite_ml ? c.favorite_ml->american : INT_MIN,
                             c.underdog_ml ? c.underdog_ml->american : INT_MIN);
    };
    if (key(q) > key(cur)) it->second = std::move(q);
  }
  std::vector<CasinoQuote> out;
  out.reserve(best.size());
  for (auto& [id, q] : best) out.push_back(std::move(q));
  return out;
}

std::vector<Dataset> split_by_league(const Dataset& dataset) {
  std::map<League, Dataset> parts;
  for (const GameRecord& g : dataset.games) {
    Dataset& d = parts[g.league];
    if (d.games.empty()) {
      d.league = g.league;
      d.source_meta = dataset.source_meta;
    }
    d.games.push_back(g);
  }
  std::vector<Dataset> out;
  out.reserve(parts.size());
  for (auto& [league, d] : parts) out.push_back(std::move(d));
  return out;
}

}  // namespace linebet
