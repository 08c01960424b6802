#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kdekit/kernels.hpp"
#include "kdekit/sample.hpp"

namespace kdekit {

//! Outcome of a bandwidth selection: the chosen h plus diagnostics. A report
//! with converged == false always says why via the boundary flag or note.
struct SelectorReport {
  double h = 0.0;
  std::vector<std::pair<double, double>> criterion_trace;  //!< (candidate, score)
  int iterations = 0;
  bool converged = true;
  bool boundary = false;
  std::string note;
};

//! Log-spaced candidate interval for the scalar searches.
struct SearchInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t grid_size = 64;

  void validate() const;
};

//! [0.05, 3] times the rule-of-thumb bandwidth, 64 log-spaced candidates.
SearchInterval default_search_interval(const Sample& sample);

//! Coarse log-grid scan followed by golden-section refinement (relative
//! tolerance 1e-5). Non-finite scores are treated as worst-case; a minimum at
//! an interval endpoint is returned unrefined with the boundary flag set.
SelectorReport minimize_scalar(const std::function<double(double)>& criterion,
                               const SearchInterval& interval);

//! MISE-optimal bandwidth for a known curvature: (R(K)/(mu2^2 r_fpp))^{1/5} n^{-1/5}.
double h_mise_oracle(KernelSpec kernel, double r_fpp, std::size_t n);

//! Gaussian reference rule 1.06 sd n^{-1/5}.
SelectorReport rule_of_thumb(const Sample& sample);

//! Outlier-resistant variant 1.06 min(sd, IQR/1.34) n^{-1/5}.
SelectorReport robust_rule(const Sample& sample);

//! Estimated roughness of the pth density derivative at pilot bandwidth g:
//! R(f_hat_g^(p)) minus the diagonal bias R(K^(p))/(n g^{2p+1}), evaluated
//! through the exact Gaussian convolution identity (the diagonal cancels, so
//! only data pairs contribute). Can be negative when the correction dominates.
double roughness_hall_marron(const Sample& sample, KernelSpec kernel, double g, int p);

//! Sequential plug-in: alternate the reference formula with a curvature
//! re-estimate at the current bandwidth until the bandwidth settles.
SelectorReport plugin_iterative(const Sample& sample, KernelSpec kernel);

//! Two-term plug-in rule (J1/n)^{1/5} + J2 (J1/n)^{3/5} built from estimated
//! second- and third-derivative roughnesses at a rule-of-thumb pilot.
SelectorReport hsjm(const Sample& sample, KernelSpec kernel);

//! Least-squares cross-validation score: exact integral of the squared
//! estimate via kernel self-convolution, minus twice the mean leave-one-out
//! density at the data.
double lscv_score(const Sample& sample, KernelSpec kernel, double h);

SelectorReport select_lscv(const Sample& sample, KernelSpec kernel, const SearchInterval& interval);

//! Biased cross-validation score (Gaussian kernel): R(K)/(nh) plus the
//! plugged-in squared-bias term built from pairwise fourth-derivative
//! convolutions.
double bcv_score(const Sample& sample, double h);

SelectorReport select_bcv(const Sample& sample, const SearchInterval& interval);

//! Mean leave-one-out log density. Returns -infinity when any left-out point
//! has zero estimated density (isolated point under a compact kernel).
double likelihood_cv_score(const Sample& sample, KernelSpec kernel, double h);

//! Maximizes the likelihood score over the interval.
SelectorReport select_likelihood_cv(const Sample& sample, KernelSpec kernel,
                                    const SearchInterval& interval);

//! LSCV criterion evaluated under the signed two-component kernel L.
double icv_lscv_score(const Sample& sample, const IcvKernelParams& params, double h);

//! The indirect cross-validation rescaling constant
//! C = (R(phi) mu2^2(L) / (R(L) mu2^2(phi)))^{1/5}.
double icv_constant(const IcvKernelParams& params);

//! Indirect cross-validation: cross-validate with L, then rescale by C.
SelectorReport select_icv(const Sample& sample, const IcvKernelParams& params,
                          const SearchInterval& interval);

//! Local threshold selector at x: scan 64 log-spaced candidates in
//! [c n^{-1/5}, n^{-eps}] and return the smallest h whose every larger
//! candidate keeps the normalized kernel contrast |Delta| above the normal
//! critical value. An empty admissible set returns the largest candidate
//! with the boundary flag set.
SelectorReport chan_local(const Sample& sample, double x, double c = 0.5, double eps = 0.1,
                          double alpha = 0.05);

//! Bootstrap selector at x: resample from a pilot-bandwidth smoothed density,
//! estimate MSE*(s) of the rescaled estimator over s_grid, and return
//! n^{-1/5} times the minimizing s. Deterministic for a fixed seed.
SelectorReport bootstrap_ziegler(const Sample& sample, double x, double pilot_b,
                                 const std::vector<double>& s_grid, std::size_t B,
                                 std::uint64_t seed);

//! Distribution-function cross-validation: mean squared gap between the
//! leave-one-out smooth CDF and the empirical CDF (average ranks on ties).
double sarda_cv_kdfe(const Sample& sample, KernelSpec kernel, double h);

SelectorReport select_sarda(const Sample& sample, KernelSpec kernel, const SearchInterval& interval);

}  // namespace kdekit
