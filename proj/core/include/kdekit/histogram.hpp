#pragma once

#include <cstddef>
#include <vector>

#include "kdekit/sample.hpp"

namespace kdekit {

//! Bin layout: bin_count half-open bins [origin + j*w, origin + (j+1)*w).
//! The single exception is the global right edge, which is included in the
//! last bin so the maximum of the data it was built for stays countable.
struct HistogramSpec {
  double origin = 0.0;
  double bin_width = 1.0;
  std::size_t bin_count = 1;

  double right_edge() const { return origin + bin_width * static_cast<double>(bin_count); }
  void validate() const;
};

class Histogram {
public:
  Histogram(HistogramSpec spec, std::vector<double> heights);

  const HistogramSpec& spec() const noexcept { return spec_; }
  const std::vector<double>& heights() const noexcept { return heights_; }

  //! Height of the bin containing x; 0 outside the binned range.
  double value_at(double x) const;

private:
  HistogramSpec spec_;
  std::vector<double> heights_;
};

//! Sturges' bin-count heuristic, ceil(1 + log2 n).
std::size_t sturges(std::size_t n);

//! Layout covering the sample: origin at the minimum, Sturges bin count,
//! width (max-min)/count widened by a relative 1e-9 so the maximum lands
//! inside the last bin. A zero-spread sample gets unit-width bins.
HistogramSpec default_spec(const Sample& sample);

//! Per-bin observation counts; observations outside the layout raise an
//! out-of-range error listing the offending values.
std::vector<std::size_t> bin_counts(const Sample& sample, const HistogramSpec& spec);

//! Density histogram with heights count/(n*bin_width).
Histogram build_histogram(const Sample& sample, const HistogramSpec& spec);

}  // namespace kdekit
