#pragma once

#include <cmath>
#include <functional>

namespace kdekit {

inline constexpr double sqrt_two_pi = 2.506628274631000502;
inline constexpr double inv_sqrt_two_pi = 0.3989422804014326779;

//! Standard normal density.
inline double normal_pdf(double z)
{
  return inv_sqrt_two_pi * std::exp(-0.5 * z * z);
}

//! Standard normal distribution function.
inline double normal_cdf(double z)
{
  return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

//! Inverse of the standard normal distribution function (Wichura's PPND16).
double normal_quantile(double p);

//! m-th derivative of the standard normal density via the Hermite recursion:
//! phi^(m)(z) = (-1)^m He_m(z) phi(z).
double normal_pdf_derivative(int m, double z);

//! (2p-1)!!, with (-1)!! = 1.
double odd_double_factorial(int p);

//! 16-node Gauss-Legendre quadrature of f on [a, b].
//! Exact for polynomial integrands up to degree 31.
double gauss_legendre_16(const std::function<double(double)>& f, double a, double b);

}  // namespace kdekit
