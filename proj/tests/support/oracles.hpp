#pragma once

// Reference implementations used only by the test suite.  Everything here is
// written to be obviously correct rather than fast: plain loops, adaptive
// quadrature, and no windowing or caching.  Tests compare library results
// against these independently derived values.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "kdekit/estimators.hpp"
#include "kdekit/histogram.hpp"
#include "kdekit/kernels.hpp"
#include "kdekit/sample.hpp"

namespace oracle {

inline double phi(double z)
{
  static const double inv_sqrt_2pi = 0.39894228040143267794;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

// Low-order normal density derivatives, written out explicitly so they do not
// share the library's recursion.
inline double phi_deriv(int order, double z)
{
  switch (order) {
    case 0: return phi(z);
    case 1: return -z * phi(z);
    case 2: return (z * z - 1.0) * phi(z);
    case 3: return (3.0 * z - z * z * z) * phi(z);
    case 4: return (((z * z - 6.0) * z * z) + 3.0) * phi(z);
    default: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb)
{
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol, int depth)
{
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
       + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11, int depth = 40)
{
  if (!(a < b)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  return detail::adapt(f, a, b, fa, fm, fb, detail::simpson(a, b, fa, fm, fb), tol, depth);
}

// Quadrature over [a, b] split at interior breakpoints, so that narrow bumps
// (small-h kernel densities) cannot slip between sample points of the
// adaptive rule.
inline double integrate_split(const std::function<double(double)>& f, double a, double b,
                              std::vector<double> cuts, double tol = 1e-11)
{
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], a);
    const double hi = std::min(cuts[i + 1], b);
    if (lo < hi) total += integrate(f, lo, hi, tol);
  }
  return total;
}

// Integration window that provably contains all of the estimate's mass, plus
// breakpoints at every datum.
inline double support_pad(kdekit::KernelSpec kernel, double h)
{
  const double radius = kdekit::is_compact(kernel) ? kdekit::support_radius(kernel) : 10.0;
  return (radius + 2.0) * h;
}

inline std::vector<double> data_cuts(const kdekit::Sample& sample)
{
  return std::vector<double>(sample.values().begin(), sample.values().end());
}

// Plain unwindowed estimator sums.

inline double kde_brute(const kdekit::Sample& sample, kdekit::KernelSpec kernel, double h, double x)
{
  double acc = 0.0;
  for (double v : sample.values()) acc += kdekit::evaluate(kernel, (x - v) / h);
  return acc / (static_cast<double>(sample.size()) * h);
}

inline double kdfe_brute(const kdekit::Sample& sample, kdekit::KernelSpec kernel, double h, double x)
{
  double acc = 0.0;
  for (double v : sample.values()) acc += kdekit::antiderivative(kernel, (x - v) / h);
  return acc / static_cast<double>(sample.size());
}

// Least-squares cross-validation scored from its definition: the exact
// integral of the squared estimate (by quadrature) minus twice the mean
// leave-one-out density.
inline double lscv_brute(const kdekit::Sample& sample, kdekit::KernelSpec kernel, double h)
{
  const std::size_t n = sample.size();
  const double pad = support_pad(kernel, h);
  const auto fhat2 = [&](double y) {
    const double f = kde_brute(sample, kernel, h, y);
    return f * f;
  };
  const double integral =
      integrate_split(fhat2, sample.min() - pad, sample.max() + pad, data_cuts(sample));

  double loo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += kdekit::evaluate(kernel, (sample[i] - sample[j]) / h);
    }
    loo += acc / (static_cast<double>(n - 1) * h);
  }
  return integral - 2.0 * loo / static_cast<double>(n);
}

// Biased cross-validation with the roughness term assembled from a numeric
// convolution of scaled second derivatives.  Gaussian kernel throughout.
inline double bcv_brute(const kdekit::Sample& sample, double h)
{
  const std::size_t n = sample.size();
  const auto d2h = [&](double u) { return phi_deriv(2, u / h) / (h * h * h); };
  const auto conv2 = [&](double delta) {
    const auto f = [&](double t) { return d2h(t) * d2h(delta - t); };
    const double lo = std::min(0.0, delta) - 12.0 * h;
    const double hi = std::max(0.0, delta) + 12.0 * h;
    return integrate_split(f, lo, hi, {0.0, delta});
  };

  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cross += conv2(sample[i] - sample[j]);

  const double nd = static_cast<double>(n);
  const double r_gauss = 1.0 / (2.0 * std::sqrt(M_PI));  // integral of phi^2
  const double roughness = 2.0 * cross / (nd * nd);
  return r_gauss / (nd * h) + 0.25 * h * h * h * h * roughness;
}

// Mean leave-one-out log density.
inline double likelihood_cv_brute(const kdekit::Sample& sample, kdekit::KernelSpec kernel, double h)
{
  const std::size_t n = sample.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      f += kdekit::evaluate(kernel, (sample[i] - sample[j]) / h);
    }
    f /= static_cast<double>(n - 1) * h;
    if (!(f > 0.0)) return -std::numeric_limits<double>::infinity();
    acc += std::log(f);
  }
  return acc / static_cast<double>(n);
}

// Empirical distribution value at sample[i] with tied observations sharing
// their average rank, computed by direct counting.
inline double average_rank_ecdf(const kdekit::Sample& sample, std::size_t i)
{
  std::size_t below = 0;
  std::size_t equal = 0;
  for (double v : sample.values()) {
    if (v < sample[i]) ++below;
    else if (v == sample[i]) ++equal;
  }
  const double rank = static_cast<double>(below) + 0.5 * static_cast<double>(equal + 1);
  return rank / static_cast<double>(sample.size());
}

// Distribution-function cross-validation: mean squared gap between the
// empirical distribution and the leave-one-out smoothed one.
inline double sarda_brute(const kdekit::Sample& sample, kdekit::KernelSpec kernel, double h)
{
  const std::size_t n = sample.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double loo = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      loo += kdekit::antiderivative(kernel, (sample[i] - sample[j]) / h);
    }
    loo /= static_cast<double>(n - 1);
    const double gap = average_rank_ecdf(sample, i) - loo;
    acc += gap * gap;
  }
  return acc / static_cast<double>(n);
}

// Binned estimate rebuilt from scratch: count, then sum bumps at bin centers.
inline double binned_brute(const kdekit::Sample& sample, kdekit::KernelSpec kernel, double h,
                           const kdekit::HistogramSpec& spec, double x)
{
  std::vector<std::size_t> counts(spec.bin_count, 0);
  for (double v : sample.values()) {
    double idx = std::floor((v - spec.origin) / spec.bin_width);
    if (idx >= static_cast<double>(spec.bin_count)) idx = static_cast<double>(spec.bin_count) - 1.0;
    if (idx < 0.0) idx = 0.0;
    ++counts[static_cast<std::size_t>(idx)];
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const double center = spec.origin + (static_cast<double>(j) + 0.5) * spec.bin_width;
    acc += static_cast<double>(counts[j]) * kdekit::evaluate(kernel, (x - center) / h);
  }
  return acc / (static_cast<double>(sample.size()) * h);
}

// Signed-kernel cross-validation score from its definition, for the
// two-component selection kernel.
inline double icv_lscv_brute(const kdekit::Sample& sample, const kdekit::IcvKernelParams& params,
                             double h)
{
  const std::size_t n = sample.size();
  const double pad = (10.0 + 2.0) * std::max(1.0, params.sigma) * h;
  const auto fhat = [&](double y) {
    double acc = 0.0;
    for (double v : sample.values()) acc += kdekit::icv_kernel(params, (y - v) / h);
    return acc / (static_cast<double>(n) * h);
  };
  const auto fhat2 = [&](double y) {
    const double f = fhat(y);
    return f * f;
  };
  const double integral =
      integrate_split(fhat2, sample.min() - pad, sample.max() + pad, data_cuts(sample));

  double loo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += kdekit::icv_kernel(params, (sample[i] - sample[j]) / h);
    }
    loo += acc / (static_cast<double>(n - 1) * h);
  }
  return integral - 2.0 * loo / static_cast<double>(n);
}

// Trapezoid rule on a uniform grid; used where the integrand is already a
// vector of estimator values.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y)
{
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return acc;
}

}  // namespace oracle
