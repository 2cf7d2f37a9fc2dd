#include "linebet/spread_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "linebet/csv.hpp"
#include "linebet/errors.hpp"
#include "linebet/time.hpp"

namespace linebet {

int SpreadIndex::spread_key(double spread) {
  return static_cast<int>(std::lround(spread * 2.0));
}

double SpreadIndex::key_to_spread(int key) { return key * 0.5; }

void SpreadIndex::add_entry(double spread, UtcSeconds concluded_at, bool won) {
  KeyHistory& h = histories_[spread_key(spread)];
  if (!h.times.empty() && concluded_at < h.times.back()) {
    throw ValidationError("index entries must be appended in time order");
  }
  h.times.push_back(concluded_at);
  h.cum_wins.push_back((h.cum_wins.empty() ? 0 : h.cum_wins.back()) + (won ? 1 : 0));
}

std::pair<std::int64_t, std::int64_t> SpreadIndex::win_loss(double spread,
                                                            UtcSeconds as_of) const {
  auto it = histories_.find(spread_key(spread));
  if (it == histories_.end()) return {0, 0};
  const KeyHistory& h = it->second;
  // Entries with time strictly before as_of.
  auto pos = std::lower_bound(h.times.begin(), h.times.end(), as_of);
  std::int64_t total = pos - h.times.begin();
  if (total == 0) return {0, 0};
  return {h.cum_wins[total - 1], total};
}

std::optional<double> SpreadIndex::win_rate(double spread, UtcSeconds as_of) const {
  auto [wins, total] = win_loss(spread, as_of);
  if (total == 0) return std::nullopt;
  return static_cast<double>(wins) / static_cast<double>(total);
}

std::string SpreadIndex::to_json_text() const {
  // Keys ordered by spread for a stable dump.
  std::map<int, const KeyHistory*> ordered;
  for (const auto& [key, hist] : histories_) ordered.emplace(key, &hist);

  nlohmann::json root = nlohmann::json::object();
  for (const auto& [key, hist] : ordered) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < hist->times.size(); ++i) {
      rows.push_back({format_utc(hist->times[i]), hist->cum_wins[i],
                      static_cast<std::int64_t>(i + 1)});
    }
    root[format_double(key_to_spread(key))] = std::move(rows);
  }
  return root.dump(2) + "\n";
}

SpreadIndex build_index(const Dataset& dataset) {
  struct Entry {
    UtcSeconds time;
    int key;
    bool won;
  };
  std::vector<Entry> entries;

  for (const GameRecord& game : dataset.games) {
    GameVictor victor = victor_of(game);
    if (victor == GameVictor::Tie) continue;  // ties carry no win/loss signal
    bool fav_won = victor == GameVictor::Favorite;

    std::set<int> keys;
    for (const CasinoQuote& q : game.quotes) {
      keys.insert(SpreadIndex::spread_key(q.favorite_spread));
    }
    for (int key : keys) {
      entries.push_back({game.start_time, key, fav_won});
      entries.push_back({game.start_time, -key, !fav_won});
    }
  }

  // Datasets are sorted already; stable-sort keeps equal-time entries in
  // game order so rebuilding from any equivalent ordering gives one index.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.time < b.time; });

  SpreadIndex index;
  for (const Entry& e : entries) {
    index.add_entry(SpreadIndex::key_to_spread(e.key), e.time, e.won);
  }
  return index;
}

SpreadSnapshot snapshot_for(const GameRecord& game, Side side, const SpreadIndex& index) {
  // Distinct quantized spreads with quote counts, from `side`'s perspective.
  std::map<int, int> freq;
  for (const CasinoQuote& q : game.quotes) {
    double spread = side == Side::Favorite ? q.favorite_spread : -q.favorite_spread;
    freq[SpreadIndex::spread_key(spread)] += 1;
  }

  SpreadSnapshot snap;
  snap.buckets.reserve(freq.size());
  for (const auto& [key, count] : freq) {
    SpreadBucket b;
    b.spread = SpreadIndex::key_to_spread(key);
    b.freq = count;
    b.prob = index.win_rate(b.spread, game.start_time);
    snap.buckets.push_back(b);
  }
  return snap;
}

std::optional<double> simple_probability(const SpreadSnapshot& snapshot) {
  double sum = 0.0;
  int defined = 0;
  for (const SpreadBucket& b : snapshot.buckets) {
    if (b.prob) {
      sum += *b.prob;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

std::optional<double> weighted_probability(const SpreadSnapshot& snapshot) {
  double num = 0.0;
  double den = 0.0;
  for (const SpreadBucket& b : snapshot.buckets) {
    if (b.prob) {
      num += *b.prob * b.freq;
      den += b.freq;
    }
  }
  if (den == 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> model_probability(const SpreadSnapshot& snapshot, ProbModel model) {
  return model == ProbModel::Simple ? simple_probability(snapshot)
                                    : weighted_probability(snapshot);
}

}  // namespace linebet
