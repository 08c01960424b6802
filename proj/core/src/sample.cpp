#include "kdekit/sample.hpp"

#include <algorithm>
#include <cmath>

namespace kdekit {

Sample::Sample(std::vector<double> values) : values_(std::move(values))
{
  if (values_.empty()) {
    throw error(errc::invalid_argument, "sample must contain at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw error(errc::invalid_argument, "sample contains a non-finite observation");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double mean(const Sample& sample)
{
  double acc = 0.0;
  for (double v : sample.values()) acc += v;
  return acc / static_cast<double>(sample.size());
}

double standard_deviation(const Sample& sample)
{
  const std::size_t n = sample.size();
  if (n < 2) {
    throw error(errc::invalid_argument, "standard deviation requires n >= 2");
  }
  const double m = mean(sample);
  double acc = 0.0;
  for (double v : sample.values()) {
    const double d = v - m;
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(n - 1));
}

double quantile(const Sample& sample, double p)
{
  if (!(p >= 0.0 && p <= 1.0)) {
    throw error(errc::invalid_argument, "quantile level must lie in [0, 1]");
  }
  const auto& x = sample.values();
  const std::size_t n = x.size();
  if (n == 1) return x[0];
  const double pos = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return x[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return x[lo] + frac * (x[lo + 1] - x[lo]);
}

double interquartile_range(const Sample& sample)
{
  if (sample.size() < 4) {
    throw error(errc::invalid_argument, "interquartile range requires n >= 4");
  }
  return quantile(sample, 0.75) - quantile(sample, 0.25);
}

double median(const Sample& sample)
{
  return quantile(sample, 0.5);
}

}  // namespace kdekit
