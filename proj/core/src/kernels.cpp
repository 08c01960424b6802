#include "kdekit/kernels.hpp"

#include <cmath>
#include <limits>

#include "kdekit/numeric.hpp"

namespace kdekit {
namespace {

const double sqrt_pi = 1.7724538509055160273;

//! Density of N(0, s^2) at v.
double scaled_normal(double v, double s)
{
  return normal_pdf(v / s) / s;
}

}  // namespace

std::string kernel_name(KernelSpec kernel)
{
  switch (kernel.family) {
    case KernelFamily::Uniform: return "uniform";
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Epanechnikov: return "epanechnikov";
    case KernelFamily::Biweight: return "biweight";
    case KernelFamily::Triweight: return "triweight";
  }
  throw error(errc::invalid_argument, "unknown kernel family");
}

KernelSpec kernel_from_name(const std::string& name)
{
  if (name == "uniform") return {KernelFamily::Uniform};
  if (name == "gaussian") return {KernelFamily::Gaussian};
  if (name == "epanechnikov") return {KernelFamily::Epanechnikov};
  if (name == "biweight") return {KernelFamily::Biweight};
  if (name == "triweight") return {KernelFamily::Triweight};
  throw error(errc::invalid_argument, "unknown kernel name '" + name + "'");
}

bool is_compact(KernelSpec kernel)
{
  return kernel.family != KernelFamily::Gaussian;
}

double support_radius(KernelSpec kernel)
{
  return is_compact(kernel) ? 1.0 : std::numeric_limits<double>::infinity();
}

double KernelMoments::d2_roughness() const
{
  if (!has_d2_) {
    throw error(errc::unsupported_operation,
                "second-derivative roughness is undefined for this kernel");
  }
  return d2_;
}

double evaluate(KernelSpec kernel, double u)
{
  if (kernel.family == KernelFamily::Gaussian) return normal_pdf(u);
  const double a = std::fabs(u);
  if (a > 1.0) return 0.0;
  const double w = 1.0 - u * u;
  switch (kernel.family) {
    case KernelFamily::Uniform: return 0.5;
    case KernelFamily::Epanechnikov: return 0.75 * w;
    case KernelFamily::Biweight: return (15.0 / 16.0) * w * w;
    case KernelFamily::Triweight: return (35.0 / 32.0) * w * w * w;
    default: break;
  }
  throw error(errc::invalid_argument, "unknown kernel family");
}

KernelMoments moments(KernelSpec kernel)
{
  switch (kernel.family) {
    case KernelFamily::Uniform:
      return {1.0 / 3.0, 1.0 / 5.0, 0.5};
    case KernelFamily::Gaussian:
      return {1.0, 3.0, 1.0 / (2.0 * sqrt_pi), 3.0 / (8.0 * sqrt_pi)};
    case KernelFamily::Epanechnikov:
      return {1.0 / 5.0, 3.0 / 35.0, 3.0 / 5.0, 4.5};
    case KernelFamily::Biweight:
      return {1.0 / 7.0, 1.0 / 21.0, 5.0 / 7.0, 22.5};
    case KernelFamily::Triweight:
      return {1.0 / 9.0, 1.0 / 33.0, 350.0 / 429.0, 35.0};
  }
  throw error(errc::invalid_argument, "unknown kernel family");
}

double derivative(KernelSpec kernel, double u, int order)
{
  if (order < 1) throw error(errc::invalid_argument, "derivative order must be >= 1");
  if (kernel.family == KernelFamily::Gaussian) return normal_pdf_derivative(order, u);
  if (order > 1) {
    throw error(errc::unsupported_operation,
                "derivatives beyond order 1 are only available for the gaussian kernel");
  }
  if (std::fabs(u) > 1.0) return 0.0;
  const double w = 1.0 - u * u;
  switch (kernel.family) {
    case KernelFamily::Uniform: return 0.0;
    case KernelFamily::Epanechnikov: return -1.5 * u;
    case KernelFamily::Biweight: return -(15.0 / 4.0) * u * w;
    case KernelFamily::Triweight: return -(105.0 / 16.0) * u * w * w;
    default: break;
  }
  throw error(errc::invalid_argument, "unknown kernel family");
}

double antiderivative(KernelSpec kernel, double u)
{
  if (kernel.family == KernelFamily::Gaussian) return normal_cdf(u);
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double u2 = u * u;
  switch (kernel.family) {
    case KernelFamily::Uniform:
      return 0.5 * (u + 1.0);
    case KernelFamily::Epanechnikov:
      return 0.5 + 0.25 * u * (3.0 - u2);
    case KernelFamily::Biweight:
      return 0.5 + (15.0 / 16.0) * u * (1.0 - u2 * (2.0 / 3.0 - u2 / 5.0));
    case KernelFamily::Triweight:
      return 0.5 + (35.0 / 32.0) * u * (1.0 - u2 * (1.0 - u2 * (3.0 / 5.0 - u2 / 7.0)));
    default: break;
  }
  throw error(errc::invalid_argument, "unknown kernel family");
}

double self_convolution(KernelSpec kernel, double v)
{
  if (kernel.family == KernelFamily::Gaussian) {
    // phi * phi is the N(0, 2) density.
    return scaled_normal(v, std::sqrt(2.0));
  }
  const double a = std::fabs(v);
  if (a >= 2.0) return 0.0;
  const double lo = std::max(-1.0, v - 1.0);
  const double hi = std::min(1.0, v + 1.0);
  // The integrand is a polynomial of degree <= 12, so 16-node quadrature is exact.
  return gauss_legendre_16(
    [kernel, v](double t) { return evaluate(kernel, t) * evaluate(kernel, v - t); }, lo, hi);
}

void IcvKernelParams::validate() const
{
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw error(errc::invalid_icv_params, "alpha must be finite and >= 0");
  }
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw error(errc::invalid_icv_params, "sigma must be finite and > 0");
  }
}

double icv_kernel(const IcvKernelParams& params, double u)
{
  params.validate();
  return (1.0 + params.alpha) * normal_pdf(u) - (params.alpha / params.sigma) * normal_pdf(u / params.sigma);
}

double icv_mu2(const IcvKernelParams& params)
{
  params.validate();
  return 1.0 + params.alpha - params.alpha * params.sigma * params.sigma;
}

double icv_roughness(const IcvKernelParams& params)
{
  params.validate();
  const double a = params.alpha;
  const double s = params.sigma;
  const double one = (1.0 + a) * (1.0 + a) / (2.0 * sqrt_pi);
  const double cross = 2.0 * a * (1.0 + a) / (sqrt_two_pi * std::sqrt(1.0 + s * s));
  const double two = a * a / (2.0 * s * sqrt_pi);
  return one - cross + two;
}

double icv_self_convolution(const IcvKernelParams& params, double v)
{
  params.validate();
  const double a = params.alpha;
  const double s = params.sigma;
  // Convolving the signed mixture with itself mixes the component variances.
  const double one = (1.0 + a) * (1.0 + a) * scaled_normal(v, std::sqrt(2.0));
  const double cross = 2.0 * a * (1.0 + a) * scaled_normal(v, std::sqrt(1.0 + s * s));
  const double two = a * a * scaled_normal(v, s * std::sqrt(2.0));
  return one - cross + two;
}

double gamma_kernel(double x, double b, double t)
{
  if (!std::isfinite(x) || x < 0.0) throw error(errc::invalid_argument, "x must be finite and >= 0");
  if (!std::isfinite(b) || b <= 0.0) throw error(errc::invalid_argument, "b must be finite and > 0");
  if (!std::isfinite(t) || t < 0.0) throw error(errc::invalid_argument, "t must be finite and >= 0");
  const double shape = x / b;
  if (t == 0.0) {
    // The Gamma(shape + 1, b) density at the origin: 1/b when shape is 0, else 0.
    return shape == 0.0 ? 1.0 / b : 0.0;
  }
  const double log_density =
    shape * std::log(t) - t / b - (shape + 1.0) * std::log(b) - std::lgamma(shape + 1.0);
  const double density = std::exp(log_density);
  if (!std::isfinite(density)) {
    throw error(errc::numeric_overflow, "gamma kernel evaluation overflowed");
  }
  return density;
}

}  // namespace kdekit
