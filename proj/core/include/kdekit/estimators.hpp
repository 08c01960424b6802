#pragma once

#include <cstddef>
#include <vector>

#include "kdekit/histogram.hpp"
#include "kdekit/kernels.hpp"
#include "kdekit/sample.hpp"

namespace kdekit {

//! A density (or derivative) estimate evaluated on an ascending grid.
//! bandwidths holds a single entry for fixed-bandwidth estimates and one
//! entry per kernel center for variable-bandwidth ones.
struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> bandwidths;
  KernelSpec kernel;
};

//! Bandwidth rule for the variable-bandwidth estimators: a constant, the
//! distance to the kth nearest datum, or an explicit per-datum list.
class BandwidthFunction {
public:
  enum class Kind { Constant, KNearest, Explicit };

  static BandwidthFunction constant(double h);
  static BandwidthFunction k_nearest(std::size_t k);
  static BandwidthFunction explicit_values(std::vector<double> per_datum);

  Kind kind() const noexcept { return kind_; }
  double constant_h() const;
  std::size_t neighbor_count() const;
  const std::vector<double>& per_datum() const;

private:
  BandwidthFunction() = default;

  Kind kind_ = Kind::Constant;
  double h_ = 1.0;
  std::size_t k_ = 1;
  std::vector<double> per_datum_;
};

//! Distance from x to its kth nearest observation, 1 <= k <= n.
double kth_nearest_distance(const Sample& sample, double x, std::size_t k);

//! Fixed-bandwidth kernel density estimate at one point. Compact kernels
//! touch only the data inside [x-h, x+h], located by binary search.
double kde_at(const Sample& sample, KernelSpec kernel, double h, double x);

//! kde_at over an ascending grid; rows may be split across n_threads.
DensityEstimate kde_grid(const Sample& sample, KernelSpec kernel, double h,
                         const std::vector<double>& grid, unsigned n_threads = 1);

//! 401 equispaced points on [min - 3h, max + 3h].
std::vector<double> default_grid(const Sample& sample, double h, std::size_t points = 401);

//! Balloon estimator: fixed-kernel KDE whose bandwidth depends on the query
//! point. Supports Constant and KNearest rules; a duplicate-ridden sample can
//! make the kth-nearest distance 0, which is a degenerate bandwidth.
double balloon_at(const Sample& sample, KernelSpec kernel, const BandwidthFunction& bw, double x);

//! Sample-point estimator: one bandwidth per datum, unit total mass.
double sample_point_kde_at(const Sample& sample, KernelSpec kernel,
                           const std::vector<double>& per_datum_h, double x);

//! Square-root-law default per-datum bandwidths: the rule-of-thumb global h
//! scaled by (pilot(X_i)/g)^(-1/2), g the geometric mean of the pilot values.
std::vector<double> sample_point_default_bandwidths(const Sample& sample, KernelSpec kernel);

//! Binned estimator: one kernel bump per non-empty bin, weighted by its count.
DensityEstimate binned_kde(const Sample& sample, KernelSpec kernel, double h,
                           const HistogramSpec& bins, const std::vector<double>& grid);

//! Variable-bandwidth variant; per_bin_h[i] applies to the ith bin center.
DensityEstimate binned_kde(const Sample& sample, KernelSpec kernel,
                           const std::vector<double>& per_bin_h, const HistogramSpec& bins,
                           const std::vector<double>& grid);

//! Gamma-kernel estimate on the nonnegative half-line: the average over the
//! sample of the Gamma(x/b + 1, b) density at each observation.
double gamma_kde_at(const Sample& sample, double b, double x);

//! Kernel distribution function estimate: the average of the kernel
//! antiderivative at (x - X_i)/h; a smooth CDF with limits 0 and 1.
double kdfe_at(const Sample& sample, KernelSpec kernel, double h, double x);

}  // namespace kdekit
