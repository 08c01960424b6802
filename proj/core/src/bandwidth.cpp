#include "kdekit/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdekit/error.hpp"
#include "kdekit/estimators.hpp"
#include "kdekit/numeric.hpp"
#include "kdekit/rng.hpp"

namespace kdekit {
namespace {

const double inf = std::numeric_limits<double>::infinity();

void require_bandwidth(double h)
{
  if (!std::isfinite(h) || h <= 0.0) {
    throw error(errc::invalid_bandwidth, "bandwidth must be finite and > 0");
  }
}

void require_gaussian(KernelSpec kernel, const char* what)
{
  if (kernel.family != KernelFamily::Gaussian) {
    throw error(errc::unsupported_operation, std::string(what) + " requires the gaussian kernel");
  }
}

void require_pairs(const Sample& sample)
{
  if (sample.size() < 2) throw error(errc::invalid_argument, "cross-validation needs n >= 2");
}

double worst_if_nan(double v)
{
  return std::isnan(v) ? inf : v;
}

}  // namespace

void SearchInterval::validate() const
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo <= 0.0 || hi <= lo) {
    throw error(errc::invalid_argument, "search interval needs 0 < lo < hi");
  }
  if (grid_size < 16) {
    throw error(errc::invalid_argument, "search grid needs at least 16 candidates");
  }
}

SearchInterval default_search_interval(const Sample& sample)
{
  const double rot = rule_of_thumb(sample).h;
  return {0.05 * rot, 3.0 * rot, 64};
}

SelectorReport minimize_scalar(const std::function<double(double)>& criterion,
                               const SearchInterval& interval)
{
  interval.validate();
  const std::size_t g = interval.grid_size;
  const double t_lo = std::log(interval.lo);
  const double step = (std::log(interval.hi) - t_lo) / static_cast<double>(g - 1);

  SelectorReport report;
  std::vector<double> candidates(g);
  std::size_t best = g;
  double best_score = inf;
  for (std::size_t i = 0; i < g; ++i) {
    double h = std::exp(t_lo + static_cast<double>(i) * step);
    if (i == 0) h = interval.lo;
    if (i == g - 1) h = interval.hi;
    candidates[i] = h;
    const double score = criterion(h);
    report.criterion_trace.emplace_back(h, score);
    if (worst_if_nan(score) < best_score) {
      best_score = worst_if_nan(score);
      best = i;
    }
  }
  if (best == g) {
    throw error(errc::criterion_failure, "criterion is non-finite across the whole grid");
  }
  if (best == 0 || best == g - 1) {
    report.h = candidates[best];
    report.converged = false;
    report.boundary = true;
    report.note = "minimum at search boundary";
    return report;
  }

  // Golden-section refinement in log-bandwidth, so the width of the bracket
  // is directly the relative precision of h.
  const double shrink = 0.6180339887498949;
  double a = std::log(candidates[best - 1]);
  double b = std::log(candidates[best + 1]);
  double t1 = b - shrink * (b - a);
  double t2 = a + shrink * (b - a);
  double f1 = worst_if_nan(criterion(std::exp(t1)));
  double f2 = worst_if_nan(criterion(std::exp(t2)));
  int iterations = 0;
  while (b - a > 1e-5 && iterations < 200) {
    if (f1 <= f2) {
      b = t2;
      t2 = t1;
      f2 = f1;
      t1 = b - shrink * (b - a);
      f1 = worst_if_nan(criterion(std::exp(t1)));
    } else {
      a = t1;
      t1 = t2;
      f1 = f2;
      t2 = a + shrink * (b - a);
      f2 = worst_if_nan(criterion(std::exp(t2)));
    }
    ++iterations;
  }
  report.h = std::exp(0.5 * (a + b));
  report.iterations = iterations;
  report.converged = b - a <= 1e-5;
  if (!report.converged) report.note = "refinement iteration cap reached";
  report.criterion_trace.emplace_back(report.h, criterion(report.h));
  return report;
}

double h_mise_oracle(KernelSpec kernel, double r_fpp, std::size_t n)
{
  if (!std::isfinite(r_fpp) || r_fpp <= 0.0) {
    throw error(errc::invalid_argument, "curvature roughness must be finite and > 0");
  }
  if (n < 1) throw error(errc::invalid_argument, "n must be >= 1");
  const KernelMoments m = moments(kernel);
  return std::pow(m.roughness / (m.mu2 * m.mu2 * r_fpp), 0.2) *
         std::pow(static_cast<double>(n), -0.2);
}

SelectorReport rule_of_thumb(const Sample& sample)
{
  const double sd = standard_deviation(sample);
  if (sd <= 0.0) throw error(errc::degenerate_sample, "sample has zero variance");
  SelectorReport report;
  report.h = 1.06 * sd * std::pow(static_cast<double>(sample.size()), -0.2);
  return report;
}

SelectorReport robust_rule(const Sample& sample)
{
  if (sample.size() < 4) {
    throw error(errc::invalid_argument, "the robust rule needs n >= 4");
  }
  const double spread = std::min(standard_deviation(sample), interquartile_range(sample) / 1.34);
  if (spread <= 0.0) throw error(errc::degenerate_sample, "sample has zero robust spread");
  SelectorReport report;
  report.h = 1.06 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
  return report;
}

double roughness_hall_marron(const Sample& sample, KernelSpec kernel, double g, int p)
{
  require_gaussian(kernel, "derivative roughness estimation");
  require_bandwidth(g);
  if (p < 0) throw error(errc::invalid_argument, "derivative order must be >= 0");
  const std::vector<double>& v = sample.values();
  const double n = static_cast<double>(v.size());
  const double scale = g * std::sqrt(2.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      sum += normal_pdf_derivative(2 * p, (v[j] - v[i]) / scale);
    }
  }
  // The diagonal of the double sum reproduces the bias correction exactly,
  // so only the data pairs remain.
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  return sign * std::pow(2.0, -p - 0.5) * 2.0 * sum /
         (n * n * std::pow(g, 2.0 * p + 1.0));
}

SelectorReport plugin_iterative(const Sample& sample, KernelSpec kernel)
{
  require_gaussian(kernel, "the iterative plug-in");
  const double n = static_cast<double>(sample.size());
  const double floor_scale = 1e-3 * moments(kernel).d2_roughness();

  SelectorReport report;
  double h = rule_of_thumb(sample).h;
  int consecutive_clamped = 0;
  bool clamped = false;
  bool settled = false;
  while (report.iterations < 50 && !settled) {
    double r = roughness_hall_marron(sample, kernel, h, 2);
    if (r <= 0.0) {
      if (++consecutive_clamped >= 3) {
        throw error(errc::plugin_failure, "curvature roughness estimate stayed non-positive");
      }
      // Floor at a fraction of the diagonal bias term for the current pilot.
      r = floor_scale / (n * std::pow(h, 5.0));
      clamped = true;
    } else {
      consecutive_clamped = 0;
    }
    const double next = h_mise_oracle(kernel, r, sample.size());
    ++report.iterations;
    report.criterion_trace.emplace_back(next, r);
    settled = std::fabs(next - h) <= 1e-6 * h;
    h = next;
  }
  report.h = h;
  report.converged = settled;
  if (!settled) report.note = "iteration cap reached";
  if (clamped) {
    report.note += report.note.empty() ? "" : "; ";
    report.note += "curvature estimate clamped positive";
  }
  return report;
}

SelectorReport hsjm(const Sample& sample, KernelSpec kernel)
{
  require_gaussian(kernel, "the two-term plug-in");
  const double g = rule_of_thumb(sample).h;
  const double r2 = roughness_hall_marron(sample, kernel, g, 2);
  const double r3 = roughness_hall_marron(sample, kernel, g, 3);
  if (r2 <= 0.0 || r3 <= 0.0) {
    throw error(errc::plugin_failure, "derivative roughness estimates must be positive");
  }
  const KernelMoments m = moments(kernel);
  const double n = static_cast<double>(sample.size());
  const double j1 = m.roughness / (m.mu2 * m.mu2 * r2);
  const double j2 = m.mu4 * r3 / (20.0 * m.mu2 * r2);
  SelectorReport report;
  report.h = std::pow(j1 / n, 0.2) + j2 * std::pow(j1 / n, 0.6);
  return report;
}

namespace {

//! The pieces of a kernel the cross-validation algebra needs. radius is the
//! support radius of density (the self-convolution spans twice that).
struct CvKernelOps {
  std::function<double(double)> density;
  std::function<double(double)> self_conv;
  double radius = inf;
};

double lscv_generic(const Sample& sample, const CvKernelOps& ops, double h)
{
  require_bandwidth(h);
  require_pairs(sample);
  const std::vector<double>& v = sample.values();
  const std::size_t n = v.size();
  const bool windowed = std::isfinite(ops.radius);
  const double density_cut = h * ops.radius;
  const double conv_cut = 2.0 * h * ops.radius;
  double conv_sum = 0.0;
  double loo_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = v[j] - v[i];
      const double pad = 4.0 * std::numeric_limits<double>::epsilon() * (d + 2.0 * h);
      if (windowed && d > conv_cut + pad) break;
      conv_sum += ops.self_conv(d / h);
      if (!windowed || d <= density_cut + pad) loo_sum += ops.density(d / h);
    }
  }
  const double nn = static_cast<double>(n);
  const double integral = (nn * ops.self_conv(0.0) + 2.0 * conv_sum) / (nn * nn * h);
  const double leave_one_out = 4.0 * loo_sum / (nn * (nn - 1.0) * h);
  return integral - leave_one_out;
}

}  // namespace

double lscv_score(const Sample& sample, KernelSpec kernel, double h)
{
  CvKernelOps ops;
  ops.density = [kernel](double u) { return evaluate(kernel, u); };
  ops.self_conv = [kernel](double v) { return self_convolution(kernel, v); };
  ops.radius = support_radius(kernel);
  return lscv_generic(sample, ops, h);
}

SelectorReport select_lscv(const Sample& sample, KernelSpec kernel, const SearchInterval& interval)
{
  return minimize_scalar([&](double h) { return lscv_score(sample, kernel, h); }, interval);
}

double bcv_score(const Sample& sample, double h)
{
  require_bandwidth(h);
  require_pairs(sample);
  const std::vector<double>& v = sample.values();
  const double n = static_cast<double>(v.size());
  const double scale = h * std::sqrt(2.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      sum += normal_pdf_derivative(4, (v[j] - v[i]) / scale);
    }
  }
  // (K_h'' * K_h'')(d) for the gaussian kernel is phi''''(d/(h sqrt 2)) / (4 sqrt(2) h^5).
  const double r_tilde = 2.0 * sum / (4.0 * std::sqrt(2.0) * std::pow(h, 5.0) * n * n);
  const KernelMoments m = moments({KernelFamily::Gaussian});
  return m.roughness / (n * h) + 0.25 * std::pow(h, 4.0) * m.mu2 * m.mu2 * r_tilde;
}

SelectorReport select_bcv(const Sample& sample, const SearchInterval& interval)
{
  return minimize_scalar([&](double h) { return bcv_score(sample, h); }, interval);
}

double likelihood_cv_score(const Sample& sample, KernelSpec kernel, double h)
{
  require_bandwidth(h);
  require_pairs(sample);
  const std::vector<double>& v = sample.values();
  const std::size_t n = v.size();
  const double self_weight = evaluate(kernel, 0.0);
  const bool windowed = is_compact(kernel);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    if (windowed) {
      const double pad = 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(v[i]) + h);
      auto first = std::lower_bound(v.begin(), v.end(), v[i] - h - pad);
      auto last = std::upper_bound(first, v.end(), v[i] + h + pad);
      for (auto it = first; it != last; ++it) sum += evaluate(kernel, (v[i] - *it) / h);
    } else {
      for (double xj : v) sum += evaluate(kernel, (v[i] - xj) / h);
    }
    const double f = (sum - self_weight) / ((static_cast<double>(n) - 1.0) * h);
    if (!(f > 0.0)) return -inf;
    total += std::log(f);
  }
  return total / static_cast<double>(n);
}

SelectorReport select_likelihood_cv(const Sample& sample, KernelSpec kernel,
                                    const SearchInterval& interval)
{
  SelectorReport report = minimize_scalar(
    [&](double h) { return -likelihood_cv_score(sample, kernel, h); }, interval);
  for (auto& entry : report.criterion_trace) entry.second = -entry.second;
  report.note += report.note.empty() ? "" : "; ";
  report.note += "score maximized";
  return report;
}

double icv_lscv_score(const Sample& sample, const IcvKernelParams& params, double h)
{
  params.validate();
  CvKernelOps ops;
  ops.density = [params](double u) { return icv_kernel(params, u); };
  ops.self_conv = [params](double v) { return icv_self_convolution(params, v); };
  return lscv_generic(sample, ops, h);
}

double icv_constant(const IcvKernelParams& params)
{
  params.validate();
  const double mu2 = icv_mu2(params);
  if (mu2 <= 0.0) {
    throw error(errc::invalid_icv_params, "second moment of L must be positive");
  }
  const double r_phi = moments({KernelFamily::Gaussian}).roughness;
  // mu2 of the gaussian kernel is exactly 1 and drops out of the ratio.
  return std::pow(r_phi * mu2 * mu2 / icv_roughness(params), 0.2);
}

SelectorReport select_icv(const Sample& sample, const IcvKernelParams& params,
                          const SearchInterval& interval)
{
  const double c = icv_constant(params);
  SelectorReport report = minimize_scalar(
    [&](double h) { return icv_lscv_score(sample, params, h); }, interval);
  report.h *= c;
  for (auto& entry : report.criterion_trace) entry.first *= c;
  return report;
}

SelectorReport chan_local(const Sample& sample, double x, double c, double eps, double alpha)
{
  if (!std::isfinite(c) || c <= 0.0) throw error(errc::invalid_argument, "c must be > 0");
  if (!(eps > 0.0 && eps < 0.2)) throw error(errc::invalid_argument, "eps must lie in (0, 1/5)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw error(errc::invalid_argument, "alpha must lie in (0, 1)");
  const double n = static_cast<double>(sample.size());
  const double lo = c * std::pow(n, -0.2);
  const double hi = std::pow(n, -eps);
  if (lo >= hi) throw error(errc::invalid_argument, "scan interval is empty for these parameters");

  const KernelSpec gaussian{KernelFamily::Gaussian};
  const KernelSpec reference{KernelFamily::Epanechnikov};
  // Squared L2 distance between the two kernel weights, in closed form.
  const double d2 = moments(gaussian).roughness + moments(reference).roughness -
                    3.0 * normal_pdf(1.0);
  const double d = std::sqrt(d2);
  const double z = normal_quantile(1.0 - alpha);

  const std::size_t g = 64;
  const double t_lo = std::log(lo);
  const double step = (std::log(hi) - t_lo) / static_cast<double>(g - 1);
  SelectorReport report;
  std::vector<double> candidates(g);
  std::vector<double> delta(g);
  for (std::size_t i = 0; i < g; ++i) {
    double h = std::exp(t_lo + static_cast<double>(i) * step);
    if (i == 0) h = lo;
    if (i == g - 1) h = hi;
    candidates[i] = h;
    const double fg = kde_at(sample, gaussian, h, x);
    const double fe = kde_at(sample, reference, h, x);
    if (!(fg > 0.0)) {
      throw error(errc::domain_violation, "estimated density vanishes at x on the scan grid");
    }
    delta[i] = std::sqrt(n * h) * (fg - fe) / (std::sqrt(fg) * d);
    report.criterion_trace.emplace_back(h, delta[i]);
  }

  std::ptrdiff_t last_fail = -1;
  for (std::size_t i = 0; i < g; ++i) {
    if (!(std::fabs(delta[i]) > z)) last_fail = static_cast<std::ptrdiff_t>(i);
  }
  if (last_fail < 0) {
    // Every candidate is significant, so the admissible set reaches below the
    // scan interval and its infimum is unresolved.
    report.h = candidates.front();
    report.converged = false;
    report.boundary = true;
    report.note = "every candidate significant; scan floor returned";
  } else if (last_fail == static_cast<std::ptrdiff_t>(g) - 1) {
    report.h = candidates.back();
    report.converged = false;
    report.boundary = true;
    report.note = "admissible set empty; scan ceiling returned";
  } else {
    report.h = candidates[static_cast<std::size_t>(last_fail)];
  }
  return report;
}

SelectorReport bootstrap_ziegler(const Sample& sample, double x, double pilot_b,
                                 const std::vector<double>& s_grid, std::size_t B,
                                 std::uint64_t seed)
{
  require_bandwidth(pilot_b);
  if (B < 1) throw error(errc::invalid_argument, "need at least one bootstrap replicate");
  if (s_grid.empty()) throw error(errc::invalid_argument, "s grid must be non-empty");
  for (double s : s_grid) {
    if (!std::isfinite(s) || s <= 0.0) {
      throw error(errc::invalid_argument, "s grid values must be finite and > 0");
    }
  }
  const std::vector<double>& v = sample.values();
  const double n = static_cast<double>(v.size());
  const double rate = std::pow(n, -0.2);
  const KernelSpec gaussian{KernelFamily::Gaussian};
  const double target = kde_at(sample, gaussian, pilot_b, x);

  SelectorReport report;
  std::size_t best = 0;
  double best_mse = inf;
  for (std::size_t si = 0; si < s_grid.size(); ++si) {
    const double hs = rate * s_grid[si];
    double mse = 0.0;
    for (std::size_t rep = 0; rep < B; ++rep) {
      // One independent stream per (s, replicate), so scheduling cannot
      // change the draws.
      Rng rng = Rng::stream(seed, si, rep);
      double sum = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double draw = v[rng.uniform_index(v.size())] + pilot_b * rng.normal();
        sum += normal_pdf((x - draw) / hs);
      }
      const double fstar = sum / (n * hs);
      mse += (fstar - target) * (fstar - target);
    }
    mse /= static_cast<double>(B);
    report.criterion_trace.emplace_back(hs, mse);
    if (mse < best_mse) {
      best_mse = mse;
      best = si;
    }
  }
  report.h = rate * s_grid[best];
  return report;
}

double sarda_cv_kdfe(const Sample& sample, KernelSpec kernel, double h)
{
  require_bandwidth(h);
  require_pairs(sample);
  const std::vector<double>& v = sample.values();
  const std::size_t n = v.size();

  // Empirical CDF at the data with average ranks over ties.
  std::vector<double> ecdf(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && v[j] == v[i]) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t t = i; t < j; ++t) ecdf[t] = avg_rank / static_cast<double>(n);
    i = j;
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum += antiderivative(kernel, (v[i] - v[j]) / h);
    }
    const double gap = sum / (static_cast<double>(n) - 1.0) - ecdf[i];
    total += gap * gap;
  }
  return total / static_cast<double>(n);
}

SelectorReport select_sarda(const Sample& sample, KernelSpec kernel, const SearchInterval& interval)
{
  return minimize_scalar([&](double h) { return sarda_cv_kdfe(sample, kernel, h); }, interval);
}

}  // namespace kdekit
