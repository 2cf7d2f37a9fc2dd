#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linebet {

/// Scott's normal-reference bin width 3.49 * s * n^(-1/3), with s the
/// unbiased sample standard deviation. Throws DegenerateSamples for fewer
/// than two samples or zero spread.
double scott_bin_width(std::span<const double> samples);

/// Fixed-width histogram on the width-aligned lattice. Bins are half-open
/// [left, right) except that a sample landing exactly on the grid's
/// rightmost boundary counts in the last bin. origin = floor(min/width) *
/// width; bin of x = floor((x - origin)/width), clamped into the last bin at
/// the right edge. Sum of counts always equals the sample count.
struct Histogram1D {
  double origin = 0.0;
  double width = 0.0;
  std::vector<std::int64_t> counts;

  double bin_left(std::size_t i) const { return origin + static_cast<double>(i) * width; }
  double bin_right(std::size_t i) const { return origin + static_cast<double>(i + 1) * width; }
};

/// Builds the histogram, deriving the width by Scott's rule unless
/// overridden. A single sample (or zero spread) with an explicit width gives
/// one bin; without one it throws DegenerateSamples. Throws EmptySamples on
/// no input.
Histogram1D histogram(std::span<const double> samples,
                      std::optional<double> width = std::nullopt);

/// Bivariate averaged-shifted-histogram density on a fine grid of
/// (h_x/m_x, h_y/m_y) cells, using product triangular weights. The grid is
/// padded by m-1 fine cells per side so every sample's full kernel lands on
/// it; density then integrates to exactly 1 (up to roundoff). With
/// m = (1, 1) the estimate degenerates to the plain bivariate histogram
/// density on the same lattice-aligned bins.
struct AshGrid2D {
  int x_bins = 0;  // fine cells, margin included
  int y_bins = 0;
  double x_origin = 0.0;  // left edge of fine cell 0
  double y_origin = 0.0;
  double h_x = 0.0;  // coarse (kernel) widths
  double h_y = 0.0;
  int m_x = 1;  // shifts per axis
  int m_y = 1;
  std::vector<double> density;  // row-major: [ix * y_bins + iy]

  double cell_width_x() const { return h_x / m_x; }
  double cell_width_y() const { return h_y / m_y; }
  double x_center(int ix) const { return x_origin + (ix + 0.5) * cell_width_x(); }
  double y_center(int iy) const { return y_origin + (iy + 0.5) * cell_width_y(); }
};

/// ASH with explicit coarse bin widths.
AshGrid2D ash2d_widths(std::span<const double> xs, std::span<const double> ys,
                       std::pair<double, double> widths, std::pair<int, int> shifts);

/// ASH with per-axis coarse bin counts over the data range
/// (width = range / bins). Throws DegenerateSamples when an axis has zero
/// spread.
AshGrid2D ash2d(std::span<const double> xs, std::span<const double> ys,
                std::pair<int, int> bins, std::pair<int, int> shifts);

/// ASH with per-axis Scott's-rule widths (the default configuration).
AshGrid2D ash2d_scott(std::span<const double> xs, std::span<const double> ys,
                      std::pair<int, int> shifts = {5, 5});

/// CSV: bin_left,bin_right,count.
std::string histogram_to_csv(const Histogram1D& hist);

/// CSV: x_center,y_center,density (row-major).
std::string ash_to_csv(const AshGrid2D& grid);

/// Self-contained SVG bar chart of the histogram.
std::string histogram_to_svg(const Histogram1D& hist);

/// Self-contained SVG heat map of the ASH grid, filled at decile levels of
/// the maximum density.
std::string ash_to_svg(const AshGrid2D& grid);

}  // namespace linebet
