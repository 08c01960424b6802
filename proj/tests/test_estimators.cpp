#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "kdekit/bandwidth.hpp"
#include "kdekit/error.hpp"
#include "kdekit/estimators.hpp"
#include "kdekit/histogram.hpp"
#include "kdekit/kernels.hpp"
#include "kdekit/rng.hpp"
#include "kdekit/sample.hpp"
#include "support/oracles.hpp"
#include "support/test_data.hpp"

using kdekit::BandwidthFunction;
using kdekit::HistogramSpec;
using kdekit::KernelFamily;
using kdekit::KernelSpec;
using kdekit::Sample;

namespace {

const KernelSpec uniform{KernelFamily::Uniform};
const KernelSpec gaussian{KernelFamily::Gaussian};
const KernelSpec epanechnikov{KernelFamily::Epanechnikov};
const KernelSpec biweight{KernelFamily::Biweight};
const KernelSpec triweight{KernelFamily::Triweight};

const std::vector<KernelSpec> families = {uniform, gaussian, epanechnikov, biweight, triweight};

}  // namespace

TEST_CASE("kde_at: pinned values")
{
  CHECK(kdekit::kde_at(Sample({0.0}), gaussian, 1.0, 0.0)
        == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(kdekit::kde_at(Sample({-1.0, 1.0}), uniform, 2.0, 0.0) == 0.25);
}

TEST_CASE("kde_at: mirror symmetry")
{
  const Sample sample = testdata::normal_sample(37, 11, 0.4, 1.3);
  std::vector<double> mirrored(sample.values().rbegin(), sample.values().rend());
  for (double& v : mirrored) v = -v;
  const Sample reflected(mirrored);

  for (const auto& kernel : families) {
    for (double x : {-1.7, -0.2, 0.9, 3.1}) {
      const double lhs = kdekit::kde_at(sample, kernel, 0.8, x);
      const double rhs = kdekit::kde_at(reflected, kernel, 0.8, -x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("kde_at: location-scale equivariance")
{
  const Sample sample = testdata::normal_sample(48, 12);
  const double a = 2.5;
  const double b = -3.0;
  std::vector<double> moved(sample.values());
  for (double& v : moved) v = a * v + b;
  const Sample transformed(moved);

  for (const auto& kernel : families) {
    for (double x : {-0.9, 0.0, 0.6, 2.2}) {
      const double lhs = kdekit::kde_at(transformed, kernel, a * 0.7, a * x + b);
      const double rhs = kdekit::kde_at(sample, kernel, 0.7, x) / a;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("kde_at: windowed sums match the plain loop bit for bit")
{
  const Sample sample = testdata::normal_sample(50, 13);
  for (const auto& kernel : families) {
    for (double h : {0.05, 0.4, 1.7}) {
      // Probe generic points plus window edges sitting exactly on data +- h.
      std::vector<double> probes = {-3.3, -0.51, 0.0, 0.77, 2.9};
      probes.push_back(sample[10] + h);
      probes.push_back(sample[10] - h);
      probes.push_back(sample.min() - h);
      probes.push_back(sample.max() + h);
      for (double x : probes) {
        CHECK(kdekit::kde_at(sample, kernel, h, x) == oracle::kde_brute(sample, kernel, h, x));
      }
    }
  }
}

TEST_CASE("kde_grid: matches kde_at and is thread-count independent")
{
  const Sample sample = testdata::normal_sample(60, 14);
  const auto grid = testdata::linspace(-4.0, 4.0, 173);
  const auto serial = kdekit::kde_grid(sample, epanechnikov, 0.6, grid, 1);
  const auto threaded = kdekit::kde_grid(sample, epanechnikov, 0.6, grid, 4);

  REQUIRE(serial.values.size() == grid.size());
  CHECK(serial.values == threaded.values);
  for (std::size_t i = 0; i < grid.size(); i += 17) {
    CHECK(serial.values[i] == kdekit::kde_at(sample, epanechnikov, 0.6, grid[i]));
  }

  const auto single = kdekit::kde_grid(sample, epanechnikov, 0.6, {0.4}, 1);
  CHECK(single.values[0] == kdekit::kde_at(sample, epanechnikov, 0.6, 0.4));
}

TEST_CASE("kde_grid: integrates to one")
{
  const Sample sample = testdata::normal_sample(100, 15);
  {
    const double h = 0.35;
    const auto grid = testdata::linspace(sample.min() - 8.0 * h, sample.max() + 8.0 * h, 20001);
    const auto estimate = kdekit::kde_grid(sample, gaussian, h, grid, 2);
    CHECK(oracle::trapezoid(grid, estimate.values) == doctest::Approx(1.0).epsilon(1e-6));
  }
  {
    const double h = 0.5;
    const auto grid = testdata::linspace(sample.min() - 1.01 * h, sample.max() + 1.01 * h, 20001);
    const auto estimate = kdekit::kde_grid(sample, biweight, h, grid, 2);
    CHECK(oracle::trapezoid(grid, estimate.values) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("kde_grid: standard-normal peak lands near 0.4")
{
  const Sample sample = testdata::normal_sample(100, 16);
  const double h = kdekit::rule_of_thumb(sample).h;
  const auto grid = kdekit::default_grid(sample, h);
  REQUIRE(grid.size() == 401);
  const auto estimate = kdekit::kde_grid(sample, gaussian, h, grid);
  double peak = 0.0;
  for (double v : estimate.values) peak = std::max(peak, v);
  CHECK(peak >= 0.25);
  CHECK(peak <= 0.55);
}

TEST_CASE("kth_nearest_distance: pinned values and checks")
{
  const Sample sample({0.0, 1.0, 2.0});
  CHECK(kdekit::kth_nearest_distance(sample, 0.9, 1) == std::fabs(0.9 - 1.0));
  CHECK(kdekit::kth_nearest_distance(Sample({0.0, 1.0}), 0.0, 2) == 1.0);
  CHECK_THROWS_AS((void)kdekit::kth_nearest_distance(sample, 0.5, 0), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::kth_nearest_distance(sample, 0.5, 4), kdekit::error);
}

TEST_CASE("balloon_at: nearest-neighbour bandwidth")
{
  const Sample sample({0.0, 1.0, 2.0});
  const double d = std::fabs(0.9 - 1.0);
  const double expected = (oracle::phi((0.9 - 0.0) / d) + oracle::phi((0.9 - 1.0) / d)
                           + oracle::phi((0.9 - 2.0) / d))
                          / (3.0 * d);
  CHECK(kdekit::balloon_at(sample, gaussian, BandwidthFunction::k_nearest(1), 0.9)
        == doctest::Approx(expected).epsilon(1e-12));

  // A constant bandwidth function is the ordinary estimator, bit for bit.
  const Sample wide = testdata::normal_sample(40, 17);
  for (double x : {-1.0, 0.3, 2.6}) {
    CHECK(kdekit::balloon_at(wide, epanechnikov, BandwidthFunction::constant(0.7), x)
          == kdekit::kde_at(wide, epanechnikov, 0.7, x));
  }

  CHECK_THROWS_AS(
      (void)kdekit::balloon_at(Sample({1.0, 1.0, 1.0}), gaussian, BandwidthFunction::k_nearest(2), 1.0),
      kdekit::error);
  CHECK_THROWS_AS((void)kdekit::balloon_at(sample, gaussian,
                                           BandwidthFunction::explicit_values({0.1, 0.2, 0.3}), 0.5),
                  kdekit::error);
}

TEST_CASE("sample_point_kde_at: pinned values and collapse")
{
  const Sample pair({0.0, 10.0});
  const double expected = 0.5 * (oracle::phi(0.0) / 1.0 + oracle::phi(5.0) / 2.0);
  const double value = kdekit::sample_point_kde_at(pair, gaussian, {1.0, 2.0}, 0.0);
  CHECK(value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(value == doctest::Approx(0.19947114).epsilon(1e-5));

  const Sample sample = testdata::normal_sample(30, 18);
  const std::vector<double> equal(sample.size(), 0.45);
  for (double x : {-0.8, 0.1, 1.9}) {
    CHECK(kdekit::sample_point_kde_at(sample, triweight, equal, x)
          == doctest::Approx(kdekit::kde_at(sample, triweight, 0.45, x)).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)kdekit::sample_point_kde_at(sample, gaussian, {1.0, 2.0}, 0.0),
                  kdekit::error);
  std::vector<double> bad(sample.size(), 0.45);
  bad[3] = 0.0;
  CHECK_THROWS_AS((void)kdekit::sample_point_kde_at(sample, gaussian, bad, 0.0), kdekit::error);
}

TEST_CASE("sample_point_kde_at: default bandwidths keep unit mass")
{
  const Sample sample = testdata::normal_sample(100, 19);
  const auto per_datum = kdekit::sample_point_default_bandwidths(sample, gaussian);
  REQUIRE(per_datum.size() == sample.size());

  double log_mean = 0.0;
  double h_max = 0.0;
  for (double h : per_datum) {
    CHECK(h > 0.0);
    log_mean += std::log(h);
    h_max = std::max(h_max, h);
  }
  log_mean /= static_cast<double>(per_datum.size());
  CHECK(std::exp(log_mean) == doctest::Approx(kdekit::rule_of_thumb(sample).h).epsilon(1e-12));

  const auto grid = testdata::linspace(sample.min() - 10.0 * h_max, sample.max() + 10.0 * h_max, 8001);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    values[i] = kdekit::sample_point_kde_at(sample, gaussian, per_datum, grid[i]);
  CHECK(oracle::trapezoid(grid, values) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("binned_kde: single bin concentrates at its center")
{
  const Sample sample({1.0, 2.0, 3.0});
  const HistogramSpec one_bin{0.0, 4.0, 1};
  const auto grid = testdata::linspace(-1.0, 5.0, 41);
  const auto estimate = kdekit::binned_kde(sample, gaussian, 0.9, one_bin, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expected = oracle::phi((grid[i] - 2.0) / 0.9) / 0.9;
    CHECK(estimate.values[i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("binned_kde: matches the direct estimator when bins are fine")
{
  const Sample sample = testdata::normal_sample(200, 20);
  const double h = kdekit::rule_of_thumb(sample).h;
  const double span = sample.max() - sample.min();
  const HistogramSpec fine{sample.min(), span * (1.0 + 1e-9) / 2000.0, 2000};
  const auto grid = testdata::linspace(sample.min() - 3.0 * h, sample.max() + 3.0 * h, 101);

  const auto estimate = kdekit::binned_kde(sample, gaussian, h, fine, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(estimate.values[i]
          == doctest::Approx(kdekit::kde_at(sample, gaussian, h, grid[i])).epsilon(1e-3));
  }

  const auto wide = testdata::linspace(sample.min() - 8.0 * h, sample.max() + 8.0 * h, 8001);
  const auto full = kdekit::binned_kde(sample, gaussian, h, fine, wide);
  CHECK(oracle::trapezoid(wide, full.values) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("binned_kde: agrees with a from-scratch rebuild")
{
  const Sample sample = testdata::normal_sample(20, 21);
  const HistogramSpec spec = kdekit::default_spec(sample);
  const auto grid = testdata::linspace(-3.0, 3.0, 31);
  for (const auto& kernel : {gaussian, epanechnikov}) {
    const auto estimate = kdekit::binned_kde(sample, kernel, 0.7, spec, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(estimate.values[i]
            == doctest::Approx(oracle::binned_brute(sample, kernel, 0.7, spec, grid[i]))
                   .epsilon(1e-12));
    }
  }
}

TEST_CASE("binned_kde: per-bin bandwidths")
{
  const Sample sample = testdata::normal_sample(50, 22);
  const HistogramSpec spec = kdekit::default_spec(sample);
  const auto grid = testdata::linspace(-3.0, 3.0, 21);

  const std::vector<double> equal(spec.bin_count, 0.6);
  const auto adaptive = kdekit::binned_kde(sample, gaussian, equal, spec, grid);
  const auto constant = kdekit::binned_kde(sample, gaussian, 0.6, spec, grid);
  CHECK(adaptive.values == constant.values);

  CHECK_THROWS_AS((void)kdekit::binned_kde(sample, gaussian, {0.6, 0.6}, spec, grid),
                  kdekit::error);
}

TEST_CASE("gamma_kde_at: pinned value, mass, and domain guard")
{
  CHECK(kdekit::gamma_kde_at(Sample({1.0}), 1.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  // The estimator is not an exact density: each observation within a few b
  // of the origin loses part of its bump past the boundary, so the total
  // mass sits below one by O(b) and recovers as b shrinks.
  const Sample sample = testdata::exp_sample(50, 23);
  const auto grid = testdata::linspace(0.0, sample.max() + 12.0, 6001);
  const auto mass_at = [&](double b) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      values[i] = kdekit::gamma_kde_at(sample, b, grid[i]);
    return oracle::trapezoid(grid, values);
  };
  double previous = 0.0;
  for (double b : {0.3, 0.1, 0.02}) {
    const double mass = mass_at(b);
    CHECK(mass < 1.0);
    CHECK(1.0 - mass <= 0.6 * b);
    CHECK(mass > previous);
    previous = mass;
  }
  CHECK(previous == doctest::Approx(1.0).epsilon(1e-2));

  CHECK_THROWS_AS((void)kdekit::gamma_kde_at(Sample({0.0, 1.0}), 0.5, 1.0), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::gamma_kde_at(Sample({-1.0, 1.0}), 0.5, 1.0), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::gamma_kde_at(Sample({1.0}), 0.0, 1.0), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::gamma_kde_at(Sample({1.0}), 0.5, -0.1), kdekit::error);
}

TEST_CASE("kdfe_at: pinned values and limits")
{
  CHECK(kdekit::kdfe_at(Sample({0.0}), uniform, 1.0, 0.0) == 0.5);

  const Sample sample = testdata::normal_sample(25, 24);
  CHECK(kdekit::kdfe_at(sample, epanechnikov, 0.4, sample.max() + 0.41) == 1.0);
  CHECK(kdekit::kdfe_at(sample, epanechnikov, 0.4, sample.min() - 0.41) == 0.0);
  CHECK(kdekit::kdfe_at(sample, gaussian, 0.4, sample.max() + 3.2)
        == doctest::Approx(1.0).epsilon(1e-9));

  // As the bandwidth collapses the smoothed distribution reproduces the
  // empirical one between order statistics.
  for (std::size_t i : {std::size_t(4), std::size_t(12), std::size_t(20)}) {
    const double mid = 0.5 * (sample[i] + sample[i + 1]);
    CHECK(kdekit::kdfe_at(sample, epanechnikov, 1e-9, mid)
          == static_cast<double>(i + 1) / static_cast<double>(sample.size()));
  }

  CHECK_THROWS_AS((void)kdekit::kdfe_at(sample, gaussian, 0.0, 0.0), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::kdfe_at(sample, gaussian, -0.7, 0.0), kdekit::error);
}

TEST_CASE("kdfe_at: equals the integral of the density estimate")
{
  const Sample sample = testdata::normal_sample(20, 25);
  for (const auto& kernel : {gaussian, biweight}) {
    const double h = 0.45;
    const double lo = sample.min() - oracle::support_pad(kernel, h);
    for (double x : {-1.2, 0.1, 0.9, 2.4}) {
      const double integral = oracle::integrate_split(
          [&](double t) { return oracle::kde_brute(sample, kernel, h, t); }, lo, x,
          oracle::data_cuts(sample));
      CHECK(kdekit::kdfe_at(sample, kernel, h, x) == doctest::Approx(integral).epsilon(1e-6));
    }
  }
}

TEST_CASE("kdfe_at: monotone in x")
{
  const Sample sample = testdata::normal_sample(40, 26);
  const auto grid = testdata::linspace(-4.0, 4.0, 201);
  double prev = 0.0;
  for (double x : grid) {
    const double value = kdekit::kdfe_at(sample, triweight, 0.5, x);
    CHECK(value >= prev);
    prev = value;
  }
  CHECK(prev <= 1.0);
}

TEST_CASE("estimators: bandwidth validation")
{
  const Sample sample({0.0, 1.0});
  CHECK_THROWS_AS((void)kdekit::kde_at(sample, gaussian, 0.0, 0.5), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::kde_at(sample, gaussian, -1.0, 0.5), kdekit::error);
  CHECK_THROWS_AS((void)kdekit::kde_grid(sample, gaussian, 0.0, {0.0, 1.0}), kdekit::error);
}
