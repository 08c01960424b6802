#include <benchmark/benchmark.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "kdekit/estimators.hpp"
#include "kdekit/kernels.hpp"
#include "kdekit/rng.hpp"
#include "kdekit/sample.hpp"

namespace {

kdekit::Sample normal_sample(std::size_t n)
{
  kdekit::Rng rng(0x5eed);
  std::vector<double> values(n);
  for (double& v : values) v = rng.normal();
  return kdekit::Sample(std::move(values));
}

void bm_kde_at(benchmark::State& state, kdekit::KernelFamily family)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{family};
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kdekit::kde_at(sample, kernel, 0.3, x));
    x = x < 3.0 ? x + 0.0137 : -3.0;
  }
}

void bm_kde_at_gaussian(benchmark::State& state) { bm_kde_at(state, kdekit::KernelFamily::Gaussian); }
void bm_kde_at_epanechnikov(benchmark::State& state)
{
  bm_kde_at(state, kdekit::KernelFamily::Epanechnikov);
}

BENCHMARK(bm_kde_at_gaussian)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(bm_kde_at_epanechnikov)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_kde_grid(benchmark::State& state)
{
  const auto sample = normal_sample(10000);
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Gaussian};
  const auto grid = kdekit::default_grid(sample, 0.3);
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto estimate = kdekit::kde_grid(sample, kernel, 0.3, grid, threads);
    benchmark::DoNotOptimize(estimate.values.data());
  }
}
BENCHMARK(bm_kde_grid)->Arg(1)->Arg(2)->Arg(4);

void bm_binned_kde(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Gaussian};
  const auto bins = kdekit::default_spec(sample);
  const auto grid = kdekit::default_grid(sample, 0.3);
  for (auto _ : state) {
    auto estimate = kdekit::binned_kde(sample, kernel, 0.3, bins, grid);
    benchmark::DoNotOptimize(estimate.values.data());
  }
}
BENCHMARK(bm_binned_kde)->Arg(10000)->Arg(100000);

void bm_kdfe_at(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Biweight};
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kdekit::kdfe_at(sample, kernel, 0.3, x));
    x = x < 3.0 ? x + 0.0137 : -3.0;
  }
}
BENCHMARK(bm_kdfe_at)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
