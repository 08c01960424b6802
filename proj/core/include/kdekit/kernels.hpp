#pragma once

#include <string>

#include "kdekit/error.hpp"

namespace kdekit {

//! The five classical kernel weight families.
enum class KernelFamily { Uniform, Gaussian, Epanechnikov, Biweight, Triweight };

struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
};

//! Lowercase family name ("uniform", "gaussian", ...).
std::string kernel_name(KernelSpec kernel);

//! Parses a lowercase family name; throws errc::invalid_argument on anything else.
KernelSpec kernel_from_name(const std::string& name);

//! True for the four compactly supported families (support [-1, 1]).
bool is_compact(KernelSpec kernel);

//! Radius of the support: 1 for compact families, +inf for Gaussian.
double support_radius(KernelSpec kernel);

//! Closed-form kernel moments. d2_roughness (the roughness of the second
//! derivative) is undefined for the Uniform family and gated behind an
//! accessor that throws errc::unsupported_operation.
class KernelMoments {
public:
  KernelMoments(double mu2, double mu4, double roughness)
    : mu2(mu2), mu4(mu4), roughness(roughness)
  {
  }
  KernelMoments(double mu2, double mu4, double roughness, double d2_roughness)
    : mu2(mu2), mu4(mu4), roughness(roughness), d2_(d2_roughness), has_d2_(true)
  {
  }

  double mu2;        //!< second moment, integral of u^2 K(u)
  double mu4;        //!< fourth moment
  double roughness;  //!< integral of K^2

  bool has_d2_roughness() const noexcept { return has_d2_; }
  double d2_roughness() const;

private:
  double d2_ = 0.0;
  bool has_d2_ = false;
};

//! Kernel weight K(u). Total function; exactly 0 outside compact supports.
double evaluate(KernelSpec kernel, double u);

KernelMoments moments(KernelSpec kernel);

//! order-th derivative of K at u. The Gaussian family supports every order
//! (Hermite recursion); the polynomial families support order 1 only, with
//! the a.e. value returned on the closure of the support. Higher orders for
//! non-Gaussian families throw errc::unsupported_operation.
double derivative(KernelSpec kernel, double u, int order);

//! Integral of K from -inf to u; monotone, with limits 0 and 1.
double antiderivative(KernelSpec kernel, double u);

//! Self-convolution (K*K)(v). Closed form for Gaussian; exact polynomial
//! quadrature over the support overlap for compact families.
double self_convolution(KernelSpec kernel, double v);

//! Parameters of the signed two-component Gaussian family used by indirect
//! cross-validation: L(u) = (1+alpha) phi(u) - (alpha/sigma) phi(u/sigma).
struct IcvKernelParams {
  double alpha = 0.0;
  double sigma = 1.0;

  void validate() const;
};

double icv_kernel(const IcvKernelParams& params, double u);

//! Second moment of L: 1 + alpha - alpha sigma^2 (may be non-positive for
//! extreme parameters; callers needing the ICV constant must check).
double icv_mu2(const IcvKernelParams& params);

//! Roughness of L from the Gaussian product integrals.
double icv_roughness(const IcvKernelParams& params);

//! (L*L)(v), a signed mixture of three normal densities.
double icv_self_convolution(const IcvKernelParams& params, double v);

//! Gamma(x/b + 1, b) density at t, evaluated in log space. Throws
//! errc::numeric_overflow when the result is non-finite.
double gamma_kernel(double x, double b, double t);

}  // namespace kdekit
