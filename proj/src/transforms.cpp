#include "skewdry/transforms.hpp"

#include <cmath>

namespace skewdry {

namespace {

const Complex kI(0.0, 1.0);

void require_right_half_plane(Complex p, const char* who) {
  if (!(p.real() > 0.0))
    throw DomainError(std::string(who) + ": Re(p) must be > 0");
}

}  // namespace

RootQuad roots(const ModelParams& params, double z2, Complex p) {
  require_right_half_plane(p, "roots");
  const double mu = params.mu;
  RootQuad r;
  const Complex rad_k = sqrt_principal(mu * mu + p);
  r.kappa_plus = mu + rad_k;
  // kappa- = mu - sqrt(mu^2+p) cancels when |p| << mu^2; the product form
  // is exact: kappa+ kappa- = mu^2 - (mu^2 + p) = -p.
  r.kappa_minus = -p / r.kappa_plus;
  const Complex rad_n = sqrt_principal(mu * mu + p - kI * z2);
  r.nu_minus = -mu - rad_n;
  r.nu_plus = (p - kI * z2) / (-r.nu_minus);  // nu+ nu- = i z2 - p
  return r;
}

GPair g_coefficients(const ModelParams& params, double z2, Complex p) {
  require_right_half_plane(p, "g_coefficients");
  const RootQuad r = roots(params, z2, p);
  // G0 + i nu+ (1+eta) G1 + 1/2 = 0
  // G0 + i kappa- (1-eta) G1 - 1/2 = 0
  const Complex det =
      kI * (r.nu_plus * (1.0 + params.eta) - r.kappa_minus * (1.0 - params.eta));
  if (std::abs(det) < 1e-14)
    throw NumericalInstability("g_coefficients: near-singular 2x2 system");
  GPair g;
  g.g1 = -1.0 / det;
  g.g0 = -0.5 - kI * r.nu_plus * (1.0 + params.eta) * g.g1;
  g.psi0 = -kI * g.g1;
  return g;
}

Complex phi_tilde_numerator(int sign, Complex z1, const ModelParams& params,
                            double z2, Complex p) {
  const GPair g = g_coefficients(params, z2, p);
  // With psi0 = -i g1 the ± i eta z1 psi0 term collapses to ± eta z1 g1.
  const double s = sign >= 0 ? 1.0 : -1.0;
  return g.g0 + z1 * g.g1 * (1.0 + s * params.eta) + s * 0.5;
}

Complex phi_tilde(Complex z1c, const ModelParams& params, double z2,
                  Complex p) {
  require_right_half_plane(p, "phi_tilde");
  if (z1c.imag() == 0.0)
    throw DomainError("phi_tilde: z1 must be off the real axis (use e_tilde for boundary values)");
  const int sign = z1c.imag() > 0.0 ? +1 : -1;
  const double s = sign;
  const Complex num = phi_tilde_numerator(sign, z1c, params, z2, p);
  const Complex den = z1c * z1c + s * 2.0 * kI * params.mu * z1c + p -
                      (1.0 + s) * 0.5 * kI * z2;
  return num / den;
}

Complex e_tilde(double z1, double z2, Complex p, const ModelParams& params) {
  require_right_half_plane(p, "e_tilde");
  const Complex z(z1, 0.0);
  const Complex num_p = phi_tilde_numerator(+1, z, params, z2, p);
  const Complex num_m = phi_tilde_numerator(-1, z, params, z2, p);
  const Complex den_p = z * z + 2.0 * kI * params.mu * z + p - kI * z2;
  const Complex den_m = z * z - 2.0 * kI * params.mu * z + p;
  return num_p / den_p - num_m / den_m;
}

Complex e_tilde_x(double z, Complex p, const ModelParams& params) {
  require_right_half_plane(p, "e_tilde_x");
  const RootQuad r = roots(params, 0.0, p);
  return 1.0 / (2.0 * kI * r.kappa_minus) *
         ((1.0 + params.eta) / (z + kI * r.kappa_plus) -
          (1.0 - params.eta) / (z - kI * r.kappa_plus));
}

Complex e_tilde_i(double z, Complex p, const ModelParams& params) {
  require_right_half_plane(p, "e_tilde_i");
  const RootQuad r = roots(params, z, p);
  return ((1.0 + params.eta) * r.kappa_plus - (1.0 - params.eta) * r.nu_minus) /
         (r.nu_minus * r.kappa_plus *
          ((1.0 - params.eta) * r.kappa_minus - (1.0 + params.eta) * r.nu_plus));
}

namespace {

Complex invert_complex(const std::function<Complex(double)>& F, double t,
                       const LaplaceInverter& inv) {
  const double re =
      laplace_invert([&F](double p) { return F(p).real(); }, t, inv);
  const double im =
      laplace_invert([&F](double p) { return F(p).imag(); }, t, inv);
  return Complex(re, im);
}

}  // namespace

Complex cf_x_time(double z, double t, const ModelParams& params,
                  const LaplaceInverter& inv) {
  if (!(t > 0.0)) throw DomainError("cf_x_time: t must be > 0");
  return invert_complex(
      [&](double p) { return e_tilde_x(z, Complex(p, 0.0), params); }, t, inv);
}

Complex cf_i_time(double z, double t, const ModelParams& params,
                  const LaplaceInverter& inv) {
  if (!(t > 0.0)) throw DomainError("cf_i_time: t must be > 0");
  return invert_complex(
      [&](double p) { return e_tilde_i(z, Complex(p, 0.0), params); }, t, inv);
}

Complex cf_x_time(double z, double t, const ModelParams& params) {
  static const LaplaceInverter inv16 = make_stehfest(16);
  return cf_x_time(z, t, params, inv16);
}

Complex cf_i_time(double z, double t, const ModelParams& params) {
  if (!(t > 0.0)) throw DomainError("cf_i_time: t must be > 0");
  // The occupation cf carries arcsine-type mass near both endpoints of
  // [0, t], so E[e^{izI}] is a mix of components rotating at different
  // rates. Real-abscissa (Gaver-Stehfest) inversion cannot separate them
  // beyond ~1e-3; the Fourier-series inverter resolves the oscillation
  // directly. Split the complex cf into two real time functions using
  // conj(E[e^{izI}]) = E[e^{-izI}]:
  //   Re cf(z,t) <- (Etilde(z,p) + Etilde(-z,p)) / 2
  //   Im cf(z,t) <- (Etilde(z,p) - Etilde(-z,p)) / (2i)
  const double re = laplace_invert_oscillatory(
      [&](Complex p) {
        return 0.5 * (e_tilde_i(z, p, params) + e_tilde_i(-z, p, params));
      },
      t);
  const double im = laplace_invert_oscillatory(
      [&](Complex p) {
        return (e_tilde_i(z, p, params) - e_tilde_i(-z, p, params)) /
               Complex(0.0, 2.0);
      },
      t);
  return Complex(re, im);
}

}  // namespace skewdry
