#include "linebet/density.hpp"

#include <algorithm>
#include <cmath>

#include "linebet/csv.hpp"
#include "linebet/errors.hpp"
#include "linebet/stats.hpp"

namespace linebet {
namespace {

// Lattice-aligned cover of [min, max]: origin = floor(min/width) * width and
// the smallest bin count whose closed right edge reaches max. Shared by the
// histogram and the ASH axes so their grids coincide bin-for-bin.
std::size_t lattice_bins(double min_v, double max_v, double width, double& origin) {
  origin = std::floor(min_v / width) * width;
  double span = (max_v - origin) / width;
  auto bins = static_cast<std::int64_t>(std::ceil(span - 1e-9));
  if (bins < 1) bins = 1;
  return static_cast<std::size_t>(bins);
}

std::size_t lattice_cell(double x, double origin, double width, std::size_t bins) {
  auto idx = static_cast<std::int64_t>(std::floor((x - origin) / width));
  if (idx < 0) idx = 0;
  if (idx >= static_cast<std::int64_t>(bins)) idx = static_cast<std::int64_t>(bins) - 1;
  return static_cast<std::size_t>(idx);
}

void check_xy(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty()) throw EmptySamples("density of zero samples");
  if (xs.size() != ys.size()) throw ValidationError("x and y sample counts differ");
}

}  // namespace

double scott_bin_width(std::span<const double> samples) {
  double s = sample_stddev(samples);  // throws DegenerateSamples for n < 2
  if (s == 0.0) throw DegenerateSamples("zero sample spread admits no bin width");
  return 3.49 * s / std::cbrt(static_cast<double>(samples.size()));
}

Histogram1D histogram(std::span<const double> samples, std::optional<double> width) {
  if (samples.empty()) throw EmptySamples("histogram of zero samples");
  double w = width ? *width : scott_bin_width(samples);
  if (!(w > 0.0)) throw ValidationError("bin width must be > 0");

  auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());

  Histogram1D hist;
  hist.width = w;
  std::size_t bins = lattice_bins(*min_it, *max_it, w, hist.origin);
  hist.counts.assign(bins, 0);
  for (double x : samples) {
    hist.counts[lattice_cell(x, hist.origin, w, bins)] += 1;
  }
  return hist;
}

AshGrid2D ash2d_widths(std::span<const double> xs, std::span<const double> ys,
                       std::pair<double, double> widths, std::pair<int, int> shifts) {
  check_xy(xs, ys);
  auto [h_x, h_y] = widths;
  auto [m_x, m_y] = shifts;
  if (!(h_x > 0.0) || !(h_y > 0.0)) throw ValidationError("bin widths must be > 0");
  if (m_x < 1 || m_y < 1) throw ValidationError("shift counts must be >= 1");

  auto [min_x, max_x] = std::minmax_element(xs.begin(), xs.end());
  auto [min_y, max_y] = std::minmax_element(ys.begin(), ys.end());

  AshGrid2D g;
  g.h_x = h_x;
  g.h_y = h_y;
  g.m_x = m_x;
  g.m_y = m_y;

  double coarse_x_origin, coarse_y_origin;
  std::size_t nb_x = lattice_bins(*min_x, *max_x, h_x, coarse_x_origin);
  std::size_t nb_y = lattice_bins(*min_y, *max_y, h_y, coarse_y_origin);

  const double d_x = h_x / m_x;
  const double d_y = h_y / m_y;
  const std::size_t nf_x = nb_x * static_cast<std::size_t>(m_x);  // data fine cells
  const std::size_t nf_y = nb_y * static_cast<std::size_t>(m_y);
  const int margin_x = m_x - 1;  // pads the kernel support
  const int margin_y = m_y - 1;

  g.x_bins = static_cast<int>(nf_x) + 2 * margin_x;
  g.y_bins = static_cast<int>(nf_y) + 2 * margin_y;
  g.x_origin = coarse_x_origin - margin_x * d_x;
  g.y_origin = coarse_y_origin - margin_y * d_y;
  g.density.assign(static_cast<std::size_t>(g.x_bins) * g.y_bins, 0.0);

  for (std::size_t k = 0; k < xs.size(); ++k) {
    std::size_t ix = margin_x + lattice_cell(xs[k], coarse_x_origin, d_x, nf_x);
    std::size_t iy = margin_y + lattice_cell(ys[k], coarse_y_origin, d_y, nf_y);
    for (int dx = -margin_x; dx <= margin_x; ++dx) {
      double w_x = static_cast<double>(m_x - std::abs(dx)) / m_x;
      std::size_t row = (ix + dx) * static_cast<std::size_t>(g.y_bins);
      for (int dy = -margin_y; dy <= margin_y; ++dy) {
        double w_y = static_cast<double>(m_y - std::abs(dy)) / m_y;
        g.density[row + iy + dy] += w_x * w_y;
      }
    }
  }

  double scale = 1.0 / (static_cast<double>(xs.size()) * h_x * h_y);
  for (double& v : g.density) v *= scale;
  return g;
}

AshGrid2D ash2d(std::span<const double> xs, std::span<const double> ys,
                std::pair<int, int> bins, std::pair<int, int> shifts) {
  check_xy(xs, ys);
  if (bins.first < 1 || bins.second < 1) throw ValidationError("bin counts must be >= 1");
  auto [min_x, max_x] = std::minmax_element(xs.begin(), xs.end());
  auto [min_y, max_y] = std::minmax_element(ys.begin(), ys.end());
  if (*max_x == *min_x || *max_y == *min_y) {
    throw DegenerateSamples("zero spread on an axis admits no bin width");
  }
  // bins fixes the width; the lattice-aligned grid may add one bin.
  return ash2d_widths(xs, ys,
                      {(*max_x - *min_x) / bins.first, (*max_y - *min_y) / bins.second},
                      shifts);
}

AshGrid2D ash2d_scott(std::span<const double> xs, std::span<const double> ys,
                      std::pair<int, int> shifts) {
  check_xy(xs, ys);
  return ash2d_widths(xs, ys, {scott_bin_width(xs), scott_bin_width(ys)}, shifts);
}

std::string histogram_to_csv(const Histogram1D& hist) {
  std::string out = "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out += format_double(hist.bin_left(i)) + ',' + format_double(hist.bin_right(i)) + ',' +
           std::to_string(hist.counts[i]) + '\n';
  }
  return out;
}

std::string ash_to_csv(const AshGrid2D& grid) {
  std::string out = "x_center,y_center,density\n";
  for (int ix = 0; ix < grid.x_bins; ++ix) {
    for (int iy = 0; iy < grid.y_bins; ++iy) {
      out += format_double(grid.x_center(ix)) + ',' + format_double(grid.y_center(iy)) +
             ',' + format_double(grid.density[ix * static_cast<std::size_t>(grid.y_bins) + iy]) +
             '\n';
    }
  }
  return out;
}

std::string histogram_to_svg(const Histogram1D& hist) {
  const double width = 640, height = 400, pad = 40;
  std::int64_t max_count = 1;
  for (std::int64_t c : hist.counts) max_count = std::max(max_count, c);

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 400\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  const double plot_w = width - 2 * pad;
  const double plot_h = height - 2 * pad;
  const double bar_w = plot_w / static_cast<double>(hist.counts.size());
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    double h = plot_h * static_cast<double>(hist.counts[i]) / static_cast<double>(max_count);
    svg += "<rect x=\"" + format_double(pad + i * bar_w) + "\" y=\"" +
           format_double(height - pad - h) + "\" width=\"" + format_double(bar_w) +
           "\" height=\"" + format_double(h) +
           "\" fill=\"#4878a8\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  svg += "<line x1=\"40\" y1=\"360\" x2=\"600\" y2=\"360\" stroke=\"black\"/>\n";
  svg += "<text x=\"40\" y=\"378\">" + format_double(hist.bin_left(0)) + "</text>\n";
  svg += "<text x=\"560\" y=\"378\">" + format_double(hist.bin_right(hist.counts.size() - 1)) +
         "</text>\n";
  svg += "<text x=\"8\" y=\"44\">" + std::to_string(max_count) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string ash_to_svg(const AshGrid2D& grid) {
  const double width = 640, height = 480, pad = 40;
  double max_d = 0.0;
  for (double v : grid.density) max_d = std::max(max_d, v);
  if (max_d <= 0.0) max_d = 1.0;

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  const double plot_w = width - 2 * pad;
  const double plot_h = height - 2 * pad;
  const double cw = plot_w / grid.x_bins;
  const double ch = plot_h / grid.y_bins;
  for (int ix = 0; ix < grid.x_bins; ++ix) {
    for (int iy = 0; iy < grid.y_bins; ++iy) {
      double v = grid.density[ix * static_cast<std::size_t>(grid.y_bins) + iy];
      // Filled at decile levels of the maximum density.
      int decile = static_cast<int>(std::ceil(10.0 * v / max_d - 1e-12));
      if (decile <= 0) continue;
      if (decile > 10) decile = 10;
      int lightness = 97 - 7 * decile;
      svg += "<rect x=\"" + format_double(pad + ix * cw) + "\" y=\"" +
             format_double(height - pad - (iy + 1) * ch) + "\" width=\"" +
             format_double(cw) + "\" height=\"" + format_double(ch) + "\" fill=\"hsl(215,65%," +
             std::to_string(lightness) + "%)\"/>\n";
    }
  }
  svg += "<rect x=\"40\" y=\"40\" width=\"560\" height=\"400\" fill=\"none\" "
         "stroke=\"black\"/>\n";
  svg += "<text x=\"40\" y=\"458\">" + format_double(grid.x_origin) + "</text>\n";
  svg += "<text x=\"550\" y=\"458\">" +
         format_double(grid.x_origin + grid.x_bins * grid.cell_width_x()) + "</text>\n";
  svg += "<text x=\"4\" y=\"440\">" + format_double(grid.y_origin) + "</text>\n";
  svg += "<text x=\"4\" y=\"48\">" +
         format_double(grid.y_origin + grid.y_bins * grid.cell_width_y()) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace linebet
