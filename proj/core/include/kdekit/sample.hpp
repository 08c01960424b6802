#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdekit/error.hpp"

namespace kdekit {

//! Validated, sorted sequence of observations. Single source of truth for
//! every estimator; immutable after construction so it can be shared freely.
class Sample {
public:
  //! Sorts and validates. Throws errc::invalid_argument on empty input or
  //! any non-finite value.
  explicit Sample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> view() const noexcept { return values_; }

  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }

private:
  std::vector<double> values_;
};

double mean(const Sample& sample);

//! Sample standard deviation with divisor n-1. Requires n >= 2.
double standard_deviation(const Sample& sample);

//! Linear-interpolation quantile of the sorted values (the common "type 7"
//! convention), p in [0, 1].
double quantile(const Sample& sample, double p);

double interquartile_range(const Sample& sample);

double median(const Sample& sample);

}  // namespace kdekit
