#include "kdekit/sizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "kdekit/error.hpp"
#include "kdekit/numeric.hpp"
#include "kdekit/parallel.hpp"

namespace kdekit {
namespace {

const double ess_threshold = 5.0;

void require_bandwidth(double h)
{
  if (!std::isfinite(h) || h <= 0.0) {
    throw error(errc::invalid_bandwidth, "bandwidth must be finite and > 0");
  }
}

void require_order(int m)
{
  if (m < 1) throw error(errc::invalid_argument, "derivative order must be >= 1");
}

void require_alpha(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw error(errc::invalid_argument, "alpha must lie in (0, 1)");
  }
}

//! Count of locations with enough local data, thinned to spacing >= h so the
//! Bonferroni correction runs over effectively independent blocks.
std::size_t independent_block_count(const std::vector<double>& ess_row,
                                    const std::vector<double>& x_grid, double h)
{
  std::size_t count = 0;
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    if (ess_row[j] < ess_threshold) continue;
    if (x_grid[j] >= last + h) {
      ++count;
      last = x_grid[j];
    }
  }
  if (count < 1) count = 1;
  if (count > x_grid.size()) count = x_grid.size();
  return count;
}

}  // namespace

void ScaleSpaceGrid::validate() const
{
  if (x_grid.empty() || h_grid.empty()) {
    throw error(errc::invalid_argument, "scale-space grid must be non-empty");
  }
  for (std::size_t j = 1; j < x_grid.size(); ++j) {
    if (x_grid[j] < x_grid[j - 1]) {
      throw error(errc::invalid_argument, "location grid must be ascending");
    }
  }
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!std::isfinite(h_grid[i]) || h_grid[i] <= 0.0) {
      throw error(errc::invalid_argument, "bandwidth ladder must be positive");
    }
    if (i > 0 && h_grid[i] < h_grid[i - 1]) {
      throw error(errc::invalid_argument, "bandwidth ladder must be ascending");
    }
  }
}

std::string pixel_class_name(PixelClass c)
{
  switch (c) {
    case PixelClass::Increasing: return "increasing";
    case PixelClass::Decreasing: return "decreasing";
    case PixelClass::Indeterminate: return "indeterminate";
    case PixelClass::InsufficientData: return "insufficient_data";
  }
  throw error(errc::invalid_argument, "unknown pixel class");
}

PixelClass SizerMap::at(std::size_t h_index, std::size_t x_index) const
{
  if (h_index >= grid.h_grid.size() || x_index >= grid.x_grid.size()) {
    throw error(errc::out_of_range, "pixel index outside the map");
  }
  return pixels[h_index * grid.x_grid.size() + x_index];
}

double derivative_estimate(const Sample& sample, double h, double x, int m)
{
  require_bandwidth(h);
  require_order(m);
  double sum = 0.0;
  for (double xi : sample.values()) sum += normal_pdf_derivative(m, (x - xi) / h);
  return sum / (static_cast<double>(sample.size()) * std::pow(h, m + 1));
}

double derivative_se(const Sample& sample, double h, double x, int m)
{
  require_bandwidth(h);
  require_order(m);
  const std::vector<double>& v = sample.values();
  const std::size_t n = v.size();
  if (n < 2) throw error(errc::invalid_argument, "standard error needs n >= 2");
  const double scale = std::pow(h, m + 1);
  std::vector<double> summands(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    summands[i] = normal_pdf_derivative(m, (x - v[i]) / h) / scale;
    mean += summands[i];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double y : summands) ss += (y - mean) * (y - mean);
  const double sd = std::sqrt(ss / (static_cast<double>(n) - 1.0));
  return sd / std::sqrt(static_cast<double>(n));
}

double effective_sample_size(const Sample& sample, double h, double x)
{
  require_bandwidth(h);
  double sum = 0.0;
  for (double xi : sample.values()) {
    const double u = (x - xi) / h;
    sum += std::exp(-0.5 * u * u);
  }
  return sum;
}

PixelClass classify_pixel(const Sample& sample, double h, double x, int m, double alpha, double q)
{
  require_alpha(alpha);
  if (!std::isfinite(q) || q < 0.0) {
    throw error(errc::invalid_argument, "critical value must be finite and >= 0");
  }
  if (effective_sample_size(sample, h, x) < ess_threshold) {
    return PixelClass::InsufficientData;
  }
  const double estimate = derivative_estimate(sample, h, x, m);
  const double se = derivative_se(sample, h, x, m);
  if (estimate - q * se > 0.0) return PixelClass::Increasing;
  if (estimate + q * se < 0.0) return PixelClass::Decreasing;
  return PixelClass::Indeterminate;
}

SizerMap sizer_map(const Sample& sample, const ScaleSpaceGrid& grid, int m, double alpha,
                   unsigned n_threads)
{
  grid.validate();
  require_order(m);
  require_alpha(alpha);
  SizerMap map;
  map.grid = grid;
  map.alpha = alpha;
  map.derivative_order = m;
  const std::size_t nx = grid.x_grid.size();
  map.pixels.assign(grid.h_grid.size() * nx, PixelClass::Indeterminate);
  parallel_for(grid.h_grid.size(), n_threads, [&](std::size_t i) {
    const double h = grid.h_grid[i];
    std::vector<double> ess_row(nx);
    for (std::size_t j = 0; j < nx; ++j) {
      ess_row[j] = effective_sample_size(sample, h, grid.x_grid[j]);
    }
    const std::size_t blocks = independent_block_count(ess_row, grid.x_grid, h);
    const double q = normal_quantile(1.0 - alpha / (2.0 * static_cast<double>(blocks)));
    for (std::size_t j = 0; j < nx; ++j) {
      map.pixels[i * nx + j] = classify_pixel(sample, h, grid.x_grid[j], m, alpha, q);
    }
  });
  return map;
}

std::size_t sign_change_count(const Sample& sample, double h, const std::vector<double>& x_grid,
                              int m)
{
  std::size_t changes = 0;
  int previous = 0;
  for (double x : x_grid) {
    const double d = derivative_estimate(sample, h, x, m);
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++changes;
    previous = sign;
  }
  return changes;
}

ScaleSpaceGrid default_scale_space_grid(const Sample& sample)
{
  const double range = sample.max() - sample.min();
  if (!(range > 0.0)) throw error(errc::degenerate_sample, "sample has zero range");
  const std::vector<double>& v = sample.values();

  ScaleSpaceGrid grid;
  const std::size_t nx = 101;
  const double lo = sample.min() - 0.1 * range;
  const double hi = sample.max() + 0.1 * range;
  grid.x_grid.resize(nx);
  for (std::size_t j = 0; j < nx; ++j) {
    grid.x_grid[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(nx - 1);
  }
  grid.x_grid.back() = hi;

  std::vector<double> gaps;
  gaps.reserve(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) gaps.push_back(v[i] - v[i - 1]);
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  double h_lo = 2.0 * gaps[gaps.size() / 2];
  if (!(h_lo > 0.0)) {
    // Heavily tied data: fall back to the smallest positive gap.
    double smallest = range;
    for (double gap : gaps) {
      if (gap > 0.0 && gap < smallest) smallest = gap;
    }
    h_lo = 2.0 * smallest;
  }
  if (h_lo >= range) h_lo = range / 64.0;

  const std::size_t nh = 21;
  grid.h_grid.resize(nh);
  const double t_lo = std::log(h_lo);
  const double t_step = (std::log(range) - t_lo) / static_cast<double>(nh - 1);
  for (std::size_t i = 0; i < nh; ++i) {
    grid.h_grid[i] = std::exp(t_lo + static_cast<double>(i) * t_step);
  }
  grid.h_grid.front() = h_lo;
  grid.h_grid.back() = range;
  return grid;
}

namespace {

struct Rgb {
  unsigned char r, g, b;
};

Rgb pixel_color(PixelClass c)
{
  switch (c) {
    case PixelClass::Increasing: return {0, 0, 255};
    case PixelClass::Decreasing: return {255, 0, 0};
    case PixelClass::Indeterminate: return {160, 32, 240};
    case PixelClass::InsufficientData: return {128, 128, 128};
  }
  throw error(errc::invalid_argument, "unknown pixel class");
}

std::string format9(double v)
{
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.9g", v);
  return buffer;
}

}  // namespace

void write_ppm(const SizerMap& map, std::ostream& out)
{
  const std::size_t nx = map.grid.x_grid.size();
  const std::size_t nh = map.grid.h_grid.size();
  out << "P6\n" << nx << ' ' << nh << "\n255\n";
  for (std::size_t row = 0; row < nh; ++row) {
    const std::size_t i = nh - 1 - row;  // largest bandwidth at the top
    for (std::size_t j = 0; j < nx; ++j) {
      const Rgb color = pixel_color(map.at(i, j));
      out.put(static_cast<char>(color.r));
      out.put(static_cast<char>(color.g));
      out.put(static_cast<char>(color.b));
    }
  }
}

void write_ppm(const SizerMap& map, const std::string& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::invalid_argument, "cannot open '" + path + "' for writing");
  write_ppm(map, out);
  if (!out) throw error(errc::invalid_argument, "failed writing '" + path + "'");
}

void write_csv(const SizerMap& map, std::ostream& out)
{
  out << "x,h,class\n";
  const std::size_t nh = map.grid.h_grid.size();
  for (std::size_t row = 0; row < nh; ++row) {
    const std::size_t i = nh - 1 - row;
    for (std::size_t j = 0; j < map.grid.x_grid.size(); ++j) {
      out << format9(map.grid.x_grid[j]) << ',' << format9(map.grid.h_grid[i]) << ','
          << pixel_class_name(map.at(i, j)) << '\n';
    }
  }
}

void write_csv(const SizerMap& map, const std::string& path)
{
  std::ofstream out(path);
  if (!out) throw error(errc::invalid_argument, "cannot open '" + path + "' for writing");
  write_csv(map, out);
  if (!out) throw error(errc::invalid_argument, "failed writing '" + path + "'");
}

}  // namespace kdekit
