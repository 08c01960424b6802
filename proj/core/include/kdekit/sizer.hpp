#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kdekit/sample.hpp"

namespace kdekit {

//! Evaluation domain of the scale-space analysis: an ascending location grid
//! and an ascending, strictly positive bandwidth ladder.
struct ScaleSpaceGrid {
  std::vector<double> x_grid;
  std::vector<double> h_grid;

  void validate() const;
};

enum class PixelClass { Increasing, Decreasing, Indeterminate, InsufficientData };

std::string pixel_class_name(PixelClass c);

//! Four-way classification over the scale-space grid. Pixels are stored
//! row-major with the bandwidth index ascending: at(i, j) is h_grid[i],
//! x_grid[j].
struct SizerMap {
  ScaleSpaceGrid grid;
  std::vector<PixelClass> pixels;
  double alpha = 0.05;
  int derivative_order = 1;

  PixelClass at(std::size_t h_index, std::size_t x_index) const;
};

//! mth derivative of the gaussian-kernel density estimate at x.
double derivative_estimate(const Sample& sample, double h, double x, int m);

//! Standard error of that derivative: sample standard deviation of the n
//! kernel summands divided by sqrt(n).
double derivative_se(const Sample& sample, double h, double x, int m);

//! Kernel-weighted local data count sum_i exp(-((x - X_i)/h)^2 / 2), in (0, n].
double effective_sample_size(const Sample& sample, double h, double x);

//! One pixel's verdict given the row's simultaneous critical value q:
//! InsufficientData below an effective sample size of 5, otherwise the sign
//! of the derivative when its q-interval excludes 0, else Indeterminate.
PixelClass classify_pixel(const Sample& sample, double h, double x, int m, double alpha, double q);

//! Full map: each bandwidth row gets a Bonferroni-style critical value over
//! its effectively independent locations, then every pixel is classified.
SizerMap sizer_map(const Sample& sample, const ScaleSpaceGrid& grid, int m = 1,
                   double alpha = 0.05, unsigned n_threads = 1);

//! Number of sign changes of the mth derivative estimate along x_grid
//! (exact zeros are skipped).
std::size_t sign_change_count(const Sample& sample, double h, const std::vector<double>& x_grid,
                              int m);

//! 101 locations over the data range widened by 10%, and 21 log-spaced
//! bandwidths from twice the median observation gap up to the data range.
ScaleSpaceGrid default_scale_space_grid(const Sample& sample);

//! Binary P6 pixmap, one pixel per map cell, bandwidth rows top-to-bottom
//! from the largest h. Blue increasing, red decreasing, purple indeterminate,
//! gray insufficient data.
void write_ppm(const SizerMap& map, std::ostream& out);
void write_ppm(const SizerMap& map, const std::string& path);

//! CSV rows x, h, class in the same top-to-bottom row order as the pixmap.
void write_csv(const SizerMap& map, std::ostream& out);
void write_csv(const SizerMap& map, const std::string& path);

}  // namespace kdekit
