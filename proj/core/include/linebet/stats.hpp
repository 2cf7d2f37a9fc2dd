#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "linebet/errors.hpp"

namespace linebet {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw EmptySamples("mean of zero samples");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Unbiased (n-1) sample standard deviation.
inline double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw DegenerateSamples("stddev needs at least two samples");
  double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Linear-interpolation quantile (Hyndman-Fan type 7, the numpy default):
/// h = (n-1)p, q = x[floor(h)] + (h - floor(h)) * (x[floor(h)+1] - x[floor(h)])
/// on the sorted samples. Requires sorted non-empty input and p in [0, 1].
inline double quantile_type7_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw EmptySamples("quantile of zero samples");
  const std::size_t n = sorted.size();
  double h = static_cast<double>(n - 1) * p;
  auto lo = static_cast<std::size_t>(h);
  if (lo >= n - 1) return sorted[n - 1];
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile_type7(std::vector<double> samples, double p) {
  std::sort(samples.begin(), samples.end());
  return quantile_type7_sorted(samples, p);
}

}  // namespace linebet
