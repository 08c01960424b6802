#include "kdekit/histogram.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "kdekit/error.hpp"

namespace kdekit {

void HistogramSpec::validate() const
{
  if (!std::isfinite(origin)) throw error(errc::invalid_argument, "histogram origin must be finite");
  if (!std::isfinite(bin_width) || bin_width <= 0.0) {
    throw error(errc::invalid_argument, "histogram bin width must be finite and > 0");
  }
  if (bin_count < 1) throw error(errc::invalid_argument, "histogram needs at least one bin");
}

Histogram::Histogram(HistogramSpec spec, std::vector<double> heights)
  : spec_(spec), heights_(std::move(heights))
{
  spec_.validate();
  if (heights_.size() != spec_.bin_count) {
    throw error(errc::invalid_argument, "height count does not match bin count");
  }
}

double Histogram::value_at(double x) const
{
  if (x < spec_.origin || x > spec_.right_edge()) return 0.0;
  auto j = static_cast<std::size_t>((x - spec_.origin) / spec_.bin_width);
  if (j >= spec_.bin_count) j = spec_.bin_count - 1;
  return heights_[j];
}

std::size_t sturges(std::size_t n)
{
  if (n < 1) throw error(errc::invalid_argument, "sturges requires n >= 1");
  // Small slack so exact powers of two are not pushed up a bin by rounding noise.
  const double k = std::ceil(1.0 + std::log2(static_cast<double>(n)) - 1e-9);
  return static_cast<std::size_t>(k);
}

HistogramSpec default_spec(const Sample& sample)
{
  HistogramSpec spec;
  spec.origin = sample.min();
  spec.bin_count = sturges(sample.size());
  const double range = sample.max() - sample.min();
  spec.bin_width =
    range > 0.0 ? (range / static_cast<double>(spec.bin_count)) * (1.0 + 1e-9) : 1.0;
  return spec;
}

std::vector<std::size_t> bin_counts(const Sample& sample, const HistogramSpec& spec)
{
  spec.validate();
  std::vector<std::size_t> counts(spec.bin_count, 0);
  std::vector<double> outside;
  const double right = spec.right_edge();
  for (double x : sample.values()) {
    if (x < spec.origin || x > right) {
      outside.push_back(x);
      continue;
    }
    auto j = static_cast<std::size_t>((x - spec.origin) / spec.bin_width);
    if (j >= spec.bin_count) j = spec.bin_count - 1;  // exact right edge joins the last bin
    ++counts[j];
  }
  if (!outside.empty()) {
    std::ostringstream msg;
    msg << "observations outside [" << spec.origin << ", " << right << "]:";
    const std::size_t shown = outside.size() < 8 ? outside.size() : 8;
    for (std::size_t i = 0; i < shown; ++i) msg << ' ' << outside[i];
    if (outside.size() > shown) msg << " (+" << outside.size() - shown << " more)";
    throw error(errc::out_of_range, msg.str());
  }
  return counts;
}

Histogram build_histogram(const Sample& sample, const HistogramSpec& spec)
{
  const std::vector<std::size_t> counts = bin_counts(sample, spec);
  std::vector<double> heights(counts.size());
  const double denom = static_cast<double>(sample.size()) * spec.bin_width;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    heights[j] = static_cast<double>(counts[j]) / denom;
  }
  return Histogram(spec, std::move(heights));
}

}  // namespace kdekit
