#include "kdekit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "kdekit/bandwidth.hpp"
#include "kdekit/error.hpp"
#include "kdekit/parallel.hpp"

namespace kdekit {
namespace {

void require_bandwidth(double h)
{
  if (!std::isfinite(h) || h <= 0.0) {
    throw error(errc::invalid_bandwidth, "bandwidth must be finite and > 0");
  }
}

void require_ascending(const std::vector<double>& grid)
{
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) throw error(errc::invalid_argument, "grid must be ascending");
  }
}

//! Slack for the compact-kernel search window. Data just beyond [x-h, x+h]
//! can still round to |u| <= 1, so the window is padded far enough that
//! everything outside it evaluates to an exact kernel zero.
double window_pad(double x, double h)
{
  return 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(x) + h);
}

}  // namespace

BandwidthFunction BandwidthFunction::constant(double h)
{
  require_bandwidth(h);
  BandwidthFunction bw;
  bw.kind_ = Kind::Constant;
  bw.h_ = h;
  return bw;
}

BandwidthFunction BandwidthFunction::k_nearest(std::size_t k)
{
  if (k < 1) throw error(errc::invalid_argument, "neighbor count must be >= 1");
  BandwidthFunction bw;
  bw.kind_ = Kind::KNearest;
  bw.k_ = k;
  return bw;
}

BandwidthFunction BandwidthFunction::explicit_values(std::vector<double> per_datum)
{
  if (per_datum.empty()) throw error(errc::invalid_argument, "bandwidth list must be non-empty");
  for (double h : per_datum) require_bandwidth(h);
  BandwidthFunction bw;
  bw.kind_ = Kind::Explicit;
  bw.per_datum_ = std::move(per_datum);
  return bw;
}

double BandwidthFunction::constant_h() const
{
  if (kind_ != Kind::Constant) throw error(errc::invalid_argument, "not a constant bandwidth");
  return h_;
}

std::size_t BandwidthFunction::neighbor_count() const
{
  if (kind_ != Kind::KNearest) throw error(errc::invalid_argument, "not a nearest-neighbor bandwidth");
  return k_;
}

const std::vector<double>& BandwidthFunction::per_datum() const
{
  if (kind_ != Kind::Explicit) throw error(errc::invalid_argument, "not an explicit bandwidth list");
  return per_datum_;
}

double kth_nearest_distance(const Sample& sample, double x, std::size_t k)
{
  const std::vector<double>& v = sample.values();
  if (k < 1 || k > v.size()) {
    throw error(errc::invalid_argument, "neighbor count must be in [1, n]");
  }
  auto right = std::lower_bound(v.begin(), v.end(), x);
  auto left = right;
  double distance = 0.0;
  for (std::size_t taken = 0; taken < k; ++taken) {
    const double d_left = left == v.begin() ? std::numeric_limits<double>::infinity() : x - *(left - 1);
    const double d_right = right == v.end() ? std::numeric_limits<double>::infinity() : *right - x;
    if (d_left <= d_right) {
      distance = d_left;
      --left;
    } else {
      distance = d_right;
      ++right;
    }
  }
  return distance;
}

double kde_at(const Sample& sample, KernelSpec kernel, double h, double x)
{
  require_bandwidth(h);
  const std::vector<double>& v = sample.values();
  double sum = 0.0;
  if (is_compact(kernel)) {
    const double pad = window_pad(x, h);
    auto first = std::lower_bound(v.begin(), v.end(), x - h - pad);
    auto last = std::upper_bound(first, v.end(), x + h + pad);
    for (auto it = first; it != last; ++it) sum += evaluate(kernel, (x - *it) / h);
  } else {
    for (double xi : v) sum += evaluate(kernel, (x - xi) / h);
  }
  return sum / (static_cast<double>(v.size()) * h);
}

DensityEstimate kde_grid(const Sample& sample, KernelSpec kernel, double h,
                         const std::vector<double>& grid, unsigned n_threads)
{
  require_bandwidth(h);
  require_ascending(grid);
  DensityEstimate estimate;
  estimate.grid = grid;
  estimate.values.resize(grid.size());
  estimate.bandwidths = {h};
  estimate.kernel = kernel;
  parallel_for(grid.size(), n_threads,
               [&](std::size_t i) { estimate.values[i] = kde_at(sample, kernel, h, grid[i]); });
  return estimate;
}

std::vector<double> default_grid(const Sample& sample, double h, std::size_t points)
{
  require_bandwidth(h);
  if (points < 2) throw error(errc::invalid_argument, "grid needs at least two points");
  const double lo = sample.min() - 3.0 * h;
  const double hi = sample.max() + 3.0 * h;
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + static_cast<double>(i) * step;
  grid.back() = hi;
  return grid;
}

double balloon_at(const Sample& sample, KernelSpec kernel, const BandwidthFunction& bw, double x)
{
  switch (bw.kind()) {
    case BandwidthFunction::Kind::Constant:
      return kde_at(sample, kernel, bw.constant_h(), x);
    case BandwidthFunction::Kind::KNearest: {
      const double h = kth_nearest_distance(sample, x, bw.neighbor_count());
      if (h <= 0.0) {
        throw error(errc::degenerate_bandwidth,
                    "kth nearest observation coincides with the query point");
      }
      return kde_at(sample, kernel, h, x);
    }
    case BandwidthFunction::Kind::Explicit:
      throw error(errc::invalid_argument,
                  "per-datum bandwidths do not define a bandwidth at a query point; "
                  "use sample_point_kde_at");
  }
  throw error(errc::invalid_argument, "unknown bandwidth rule");
}

double sample_point_kde_at(const Sample& sample, KernelSpec kernel,
                           const std::vector<double>& per_datum_h, double x)
{
  const std::vector<double>& v = sample.values();
  if (per_datum_h.size() != v.size()) {
    throw error(errc::invalid_argument, "need exactly one bandwidth per observation");
  }
  for (double h : per_datum_h) require_bandwidth(h);
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum += evaluate(kernel, (x - v[i]) / per_datum_h[i]) / per_datum_h[i];
  }
  return sum / static_cast<double>(v.size());
}

std::vector<double> sample_point_default_bandwidths(const Sample& sample, KernelSpec kernel)
{
  const double h0 = rule_of_thumb(sample).h;
  const std::vector<double>& v = sample.values();
  std::vector<double> pilot(v.size());
  double log_mean = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    pilot[i] = kde_at(sample, kernel, h0, v[i]);
    log_mean += std::log(pilot[i]);
  }
  log_mean /= static_cast<double>(v.size());
  const double g = std::exp(log_mean);
  std::vector<double> h(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) h[i] = h0 * std::sqrt(g / pilot[i]);
  return h;
}

namespace {

DensityEstimate binned_kde_impl(const Sample& sample, KernelSpec kernel,
                                std::vector<double> per_bin_h, const HistogramSpec& bins,
                                const std::vector<double>& grid)
{
  require_ascending(grid);
  for (double h : per_bin_h) require_bandwidth(h);
  const std::vector<std::size_t> counts = bin_counts(sample, bins);
  const double n = static_cast<double>(sample.size());

  DensityEstimate estimate;
  estimate.grid = grid;
  estimate.values.assign(grid.size(), 0.0);
  estimate.kernel = kernel;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double sum = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] == 0) continue;
      const double center = bins.origin + (static_cast<double>(j) + 0.5) * bins.bin_width;
      const double h = per_bin_h[j];
      sum += static_cast<double>(counts[j]) * evaluate(kernel, (grid[g] - center) / h) / h;
    }
    estimate.values[g] = sum / n;
  }
  estimate.bandwidths = std::move(per_bin_h);
  return estimate;
}

}  // namespace

DensityEstimate binned_kde(const Sample& sample, KernelSpec kernel, double h,
                           const HistogramSpec& bins, const std::vector<double>& grid)
{
  require_bandwidth(h);
  return binned_kde_impl(sample, kernel, std::vector<double>(bins.bin_count, h), bins, grid);
}

DensityEstimate binned_kde(const Sample& sample, KernelSpec kernel,
                           const std::vector<double>& per_bin_h, const HistogramSpec& bins,
                           const std::vector<double>& grid)
{
  if (per_bin_h.size() != bins.bin_count) {
    throw error(errc::invalid_argument, "need exactly one bandwidth per bin");
  }
  return binned_kde_impl(sample, kernel, per_bin_h, bins, grid);
}

double gamma_kde_at(const Sample& sample, double b, double x)
{
  if (sample.min() <= 0.0) {
    throw error(errc::domain_violation, "gamma-kernel estimation requires strictly positive data");
  }
  double sum = 0.0;
  for (double xi : sample.values()) sum += gamma_kernel(x, b, xi);
  return sum / static_cast<double>(sample.size());
}

double kdfe_at(const Sample& sample, KernelSpec kernel, double h, double x)
{
  require_bandwidth(h);
  const std::vector<double>& v = sample.values();
  double sum = 0.0;
  if (is_compact(kernel)) {
    const double pad = window_pad(x, h);
    auto first = std::lower_bound(v.begin(), v.end(), x - h - pad);
    auto last = std::upper_bound(first, v.end(), x + h + pad);
    // Everything left of the window has already saturated its antiderivative.
    sum = static_cast<double>(first - v.begin());
    for (auto it = first; it != last; ++it) sum += antiderivative(kernel, (x - *it) / h);
  } else {
    for (double xi : v) sum += antiderivative(kernel, (x - xi) / h);
  }
  return sum / static_cast<double>(v.size());
}

}  // namespace kdekit
