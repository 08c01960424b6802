#include <benchmark/benchmark.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "kdekit/bandwidth.hpp"
#include "kdekit/kernels.hpp"
#include "kdekit/rng.hpp"
#include "kdekit/sample.hpp"
#include "kdekit/sizer.hpp"

namespace {

kdekit::Sample normal_sample(std::size_t n)
{
  kdekit::Rng rng(0x5eed);
  std::vector<double> values(n);
  for (double& v : values) v = rng.normal();
  return kdekit::Sample(std::move(values));
}

void bm_lscv_score(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Gaussian};
  for (auto _ : state) benchmark::DoNotOptimize(kdekit::lscv_score(sample, kernel, 0.3));
}
BENCHMARK(bm_lscv_score)->Arg(200)->Arg(1000)->Arg(5000);

void bm_lscv_score_compact(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Epanechnikov};
  for (auto _ : state) benchmark::DoNotOptimize(kdekit::lscv_score(sample, kernel, 0.3));
}
BENCHMARK(bm_lscv_score_compact)->Arg(200)->Arg(1000)->Arg(5000);

void bm_bcv_score(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kdekit::bcv_score(sample, 0.3));
}
BENCHMARK(bm_bcv_score)->Arg(200)->Arg(1000)->Arg(5000);

void bm_select_lscv(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Gaussian};
  const auto interval = kdekit::default_search_interval(sample);
  for (auto _ : state) {
    auto report = kdekit::select_lscv(sample, kernel, interval);
    benchmark::DoNotOptimize(report.h);
  }
}
BENCHMARK(bm_select_lscv)->Arg(200)->Arg(1000);

void bm_plugin_iterative(benchmark::State& state)
{
  const auto sample = normal_sample(static_cast<std::size_t>(state.range(0)));
  const kdekit::KernelSpec kernel{kdekit::KernelFamily::Gaussian};
  for (auto _ : state) {
    auto report = kdekit::plugin_iterative(sample, kernel);
    benchmark::DoNotOptimize(report.h);
  }
}
BENCHMARK(bm_plugin_iterative)->Arg(200)->Arg(1000);

void bm_sizer_map(benchmark::State& state)
{
  const auto sample = normal_sample(500);
  const auto grid = kdekit::default_scale_space_grid(sample);
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto map = kdekit::sizer_map(sample, grid, 1, 0.05, threads);
    benchmark::DoNotOptimize(map.pixels.data());
  }
}
BENCHMARK(bm_sizer_map)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
