#ifndef SKEWDRY_TRANSFORMS_HPP
#define SKEWDRY_TRANSFORMS_HPP

#include <complex>

#include "skewdry/model.hpp"
#include "skewdry/special.hpp"

namespace skewdry {

using Complex = std::complex<double>;

/// A point of the Laplace-domain spectral evaluation: z1, z2 are the real
/// frequencies dual to X(t) and the occupation time, p the Laplace variable
/// dual to t, restricted to Re(p) > 0.
struct SpectralPoint {
  double z1 = 0.0;
  double z2 = 0.0;
  Complex p;
};

/// The four denominator roots. nu± = -mu ± sqrt(mu^2 + p - i z2),
/// kappa± = mu ± sqrt(mu^2 + p), principal branch; the small-magnitude
/// roots are computed by the conjugate-product form so the identities
/// kappa+ kappa- = -p and nu+ nu- = i z2 - p hold to full precision.
struct RootQuad {
  Complex nu_plus, nu_minus, kappa_plus, kappa_minus;
};

/// Coefficients of the linear entire part, with psi0 = -i g1.
struct GPair {
  Complex g0, g1, psi0;
};

RootQuad roots(const ModelParams& params, double z2, Complex p);

GPair g_coefficients(const ModelParams& params, double z2, Complex p);

/// Sectional transform Phi~±(z1c) for Im(z1c) != 0; the "+" formula is used
/// in the upper half-plane, the "-" formula in the lower.
Complex phi_tilde(Complex z1c, const ModelParams& params, double z2, Complex p);

/// Numerator of the half-plane formula (sign = +1 or -1); exposed because
/// its zeros at i nu+ / i kappa- are the consistency checks of the module.
Complex phi_tilde_numerator(int sign, Complex z1, const ModelParams& params,
                            double z2, Complex p);

/// Boundary jump Phi~+ - Phi~- on the real axis: the Laplace transform of
/// the joint characteristic function E(z1, z2; t).
Complex e_tilde(double z1, double z2, Complex p, const ModelParams& params);

/// Marginal transform of the characteristic function of X(t).
Complex e_tilde_x(double z, Complex p, const ModelParams& params);

/// Marginal transform of the characteristic function of the occupation time.
Complex e_tilde_i(double z, Complex p, const ModelParams& params);

/// Time-domain characteristic functions by Gaver-Stehfest inversion of the
/// marginal transforms (real and imaginary parts inverted separately).
Complex cf_x_time(double z, double t, const ModelParams& params,
                  const LaplaceInverter& inv);
Complex cf_i_time(double z, double t, const ModelParams& params,
                  const LaplaceInverter& inv);

/// Defaults: cf_x uses Gaver-Stehfest at order 16, the double-precision
/// sweet spot for this transform (order 14 truncation error just misses the
/// cross-layer tolerances). cf_i uses the Fourier-series inverter instead:
/// the occupation cf oscillates in t, which real-abscissa inversion cannot
/// resolve past ~1e-3 at any order.
Complex cf_x_time(double z, double t, const ModelParams& params);
Complex cf_i_time(double z, double t, const ModelParams& params);

}  // namespace skewdry

#endif
