#include "skewdry/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "skewdry/special.hpp"

namespace skewdry {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

// |x| beyond which both terms of f_X(., t) are below ~1e-18.
double x_cutoff(double t, double mu) {
  double cut = 2.0 * mu * t + 13.0 * std::sqrt(t);
  if (mu > 0.0) cut = std::max(cut, (45.0 + std::log1p(2.0 * mu)) / (2.0 * mu));
  return cut;
}

// The two-sided base kernel of Eq-style f_X without the alpha weight.
double pdf_x_base(double ax, double t, double mu) {
  const double srt = std::sqrt(t);
  const double a = (ax - 2.0 * mu * t) / (2.0 * srt);
  const double gauss_exp = -(ax + 2.0 * mu * t) * (ax + 2.0 * mu * t) / (4.0 * t);
  if (a > 0.0) {
    // exp(-2 mu ax) * erfc(a) underflows jointly; note a^2 + 2 mu ax equals
    // (ax + 2 mu t)^2 / (4 t), so the scaled form shares one exponential.
    return std::exp(gauss_exp) * (1.0 / (kSqrtPi * srt) + mu * erfcx(a));
  }
  return std::exp(gauss_exp) / (kSqrtPi * srt) +
         mu * std::exp(-2.0 * mu * ax) * std::erfc(a);
}

}  // namespace

double pdf_x(double x, double t, const ModelParams& params) {
  if (!(t > 0.0)) throw DomainError("pdf_x: t must be > 0");
  if (!std::isfinite(x)) throw DomainError("pdf_x: x must be finite");
  const double w = (x >= 0.0) ? params.alpha : 1.0 - params.alpha;
  return w * pdf_x_base(std::abs(x), t, params.mu);
}

double cdf_x(double x, double t, const ModelParams& params) {
  if (!(t > 0.0)) throw DomainError("cdf_x: t must be > 0");
  const double cut = x_cutoff(t, params.mu);
  if (x <= -cut) return 0.0;
  if (x >= cut) return 1.0;
  auto f = [&](double s) { return pdf_x(s, t, params); };
  if (x <= 0.0) return adaptive_quad(f, -cut, x, 1e-13).value;
  return 1.0 - adaptive_quad(f, x, cut, 1e-13).value;
}

double pdf_x_steady(double x, const ModelParams& params) {
  if (!(params.mu > 0.0))
    throw DomainError("pdf_x_steady: no steady state for mu = 0");
  const double w = (x > 0.0) ? params.alpha : 1.0 - params.alpha;
  return 2.0 * params.mu * std::exp(-2.0 * params.mu * std::abs(x)) * w;
}

int chi_plus(double s1, double s2, const ModelParams& params) {
  return (1.0 + params.eta) * s1 - (1.0 - params.eta) * s2 > 0.0 ? 1 : 0;
}

double chi(double s1, double s2, const ModelParams& params) {
  const double mu = params.mu, eta = params.eta;
  if (chi_plus(s1, s2, params)) {
    const double e = -mu * (s1 + (eta - 3.0) / (eta + 1.0) * s2);
    return (1.0 - eta) / (1.0 + eta) * std::exp(e);
  }
  const double e = -mu * ((eta + 3.0) / (eta - 1.0) * s1 + s2);
  return (1.0 + eta) / (1.0 - eta) * std::exp(e);
}

// ---------------------------------------------------------------------------
// Occupation-time density
// ---------------------------------------------------------------------------

namespace {

struct OccSetup {
  double A, B;            // scales of the two kernel arguments
  double mu, eta;
  double cp, cm;          // chi branch prefactors
  double lambda;          // kink slope: s1* = lambda * s2
  double c;               // mu * A (chi+ inner exponent rate)
  double b;               // mu * (eta+3)/(eta-1) * A  (<= 0)
  double ep_rate;         // mu * (3-eta)/(1+eta) * B  (chi+ prefactor growth)
  double shift;           // -mu^2 t, folded into every integrand exponent
};

OccSetup occ_setup(double y, double t, const ModelParams& p) {
  OccSetup s;
  // Orientation: the first kernel argument carries sqrt(t - y), the second
  // sqrt(y). This is the orientation whose mean is alpha * t; it agrees with
  // the Laplace-domain transform layer and with Monte Carlo. The opposite
  // assignment produces the law of t - I (occupation of the negative
  // half-line).
  s.A = 2.0 * std::sqrt(t - y);
  s.B = 2.0 * std::sqrt(y);
  s.mu = p.mu;
  s.eta = p.eta;
  s.cp = (1.0 - p.eta) / (1.0 + p.eta);
  s.cm = (1.0 + p.eta) / (1.0 - p.eta);
  s.lambda = (1.0 - p.eta) * s.B / ((1.0 + p.eta) * s.A);
  s.c = p.mu * s.A;
  s.b = p.mu * (p.eta + 3.0) / (p.eta - 1.0) * s.A;
  s.ep_rate = p.mu * (3.0 - p.eta) / (1.0 + p.eta) * s.B;
  s.shift = -p.mu * p.mu * t;
  return s;
}

// s2 * e^{-s2^2} * Inner(s2), where Inner is the s1-integral of the chi
// kernel against s1 e^{-s1^2}, reduced to closed form on each side of the
// kink. Every exponential factor (including the outer Gaussian weight) is
// combined into one exponent per term before exponentiating.
double occ_outer_integrand(double s2, const OccSetup& q) {
  // The -mu^2 t shift keeps the integrand at the O(1) scale of the final
  // density instead of e^{+mu^2 t}; without it the adaptive quadrature's
  // roundoff floor sits above its tolerance for mu^2 t of a few tens.
  const double w = -s2 * s2 + q.shift;
  const double s1s = q.lambda * s2;  // kink position
  // chi+ piece: integral over (s1*, inf)
  const double brp =
      q.cp *
      std::exp(w + q.ep_rate * s2 - s1s * s1s - q.c * s1s) *
      (0.5 - q.c * kSqrtPi / 4.0 * erfcx(s1s + 0.5 * q.c));
  // chi- piece: integral over (0, s1*)
  const double em = -q.mu * q.B * s2;
  const double e_end = -s1s * s1s - q.b * s1s;
  const double x1 = 0.5 * q.b;
  const double x2 = s1s + 0.5 * q.b;
  const double t1 = 0.5 * std::exp(w + em);
  const double t2 = -0.5 * std::exp(w + em + e_end);
  double t3;
  if (x2 <= 0.0) {
    t3 = -(q.b * kSqrtPi / 4.0) * (erfcx(-x2) * std::exp(w + em + e_end) -
                                   erfcx(-x1) * std::exp(w + em));
  } else {
    // The 2 exp(b^2/4) term only appears when s1* has passed the interior
    // maximum of the chi- integrand; the combined exponent stays bounded.
    t3 = -(q.b * kSqrtPi / 4.0) *
         (2.0 * std::exp(w + em + 0.25 * q.b * q.b) -
          erfcx(x2) * std::exp(w + em + e_end) - erfcx(-x1) * std::exp(w + em));
  }
  return s2 * (brp + q.cm * (t1 + t2 + t3));
}

double occ_outer_cutoff(double t, const ModelParams& p) {
  return 8.0 + 2.0 * p.mu * std::sqrt(t) *
                   (1.0 / (1.0 + p.eta) + 1.0 / (1.0 - p.eta));
}

void check_occ_domain(double y, double t, const char* who) {
  if (!(t > 0.0)) throw DomainError(std::string(who) + ": t must be > 0");
  if (!(y > 0.0 && y < t))
    throw DomainError(std::string(who) + ": y must lie strictly inside (0, t)");
}

}  // namespace

double pdf_occupation(double y, double t, const ModelParams& params) {
  check_occ_domain(y, t, "pdf_occupation");
  const OccSetup q = occ_setup(y, t, params);
  auto f = [&q](double s2) { return occ_outer_integrand(s2, q); };
  const double hi = occ_outer_cutoff(t, params);
  // Coarse pass to fix the scale, then refine to ~1e-13 relative.
  const double coarse = adaptive_quad(f, 0.0, hi, 1e-6).value;
  const double d =
      adaptive_quad(f, 0.0, hi, 1e-13 * std::max(1e-30, std::abs(coarse))).value;
  // exp(-mu^2 t) is already folded into the integrand (see occ_setup::shift)
  const double pref = 4.0 / (kPi * std::sqrt(y * (t - y)));
  return std::max(0.0, pref * d);
}

double pdf_occupation_reference(double y, double t, const ModelParams& params,
                                int order) {
  check_occ_domain(y, t, "pdf_occupation_reference");
  const OccSetup q = occ_setup(y, t, params);
  const QuadratureRule lag = gauss_laguerre(order);
  const QuadratureRule leg = gauss_legendre(order);
  const double mu = params.mu, eta = params.eta;
  const double rate_m = mu * (3.0 + eta) / (1.0 - eta) * q.A;  // chi- growth in s1
  double total = 0.0;
  for (int j = 0; j < order; ++j) {
    if (lag.weights[j] == 0.0) continue;
    const double lwj = std::log(lag.weights[j]);
    const double v = lag.nodes[j];
    const double s2 = std::sqrt(v);
    const double ustar = q.lambda * q.lambda * v;
    // chi- piece on (0, u*): Gauss-Legendre with the e^{-u} factor explicit.
    if (ustar > 0.0) {
      for (int i = 0; i < order; ++i) {
        const double u = 0.5 * ustar * (leg.nodes[i] + 1.0);
        const double expo = lwj - u + rate_m * std::sqrt(u) - mu * q.B * s2;
        total += 0.125 * leg.weights[i] * ustar * q.cm * std::exp(expo);
      }
    }
    // chi+ piece on (u*, inf): shifted Gauss-Laguerre.
    for (int i = 0; i < order; ++i) {
      if (lag.weights[i] == 0.0) continue;
      const double u = ustar + lag.nodes[i];
      const double expo = lwj + std::log(lag.weights[i]) - ustar -
                          mu * q.A * std::sqrt(u) + q.ep_rate * s2;
      total += 0.25 * q.cp * std::exp(expo);
    }
  }
  const double pref = 4.0 * std::exp(-mu * mu * t) /
                      (kPi * std::sqrt(y * (t - y)));
  return pref * total;
}

double pdf_occupation_scaled(double u, double t, const ModelParams& params) {
  if (!(t > 0.0)) throw DomainError("pdf_occupation_scaled: t must be > 0");
  if (!(u > 0.0 && u < 1.0))
    throw DomainError("pdf_occupation_scaled: u must lie strictly inside (0, 1)");
  return t * pdf_occupation(t * u, t, params);
}

namespace {

// Integrand of the occupation CDF in theta coordinates, y = t sin^2(theta);
// the sin(2 theta) Jacobian cancels the inverse-square-root endpoints.
double occ_theta_integrand(double th, double t, const ModelParams& params) {
  const double y = t * std::sin(th) * std::sin(th);
  if (y <= 0.0 || y >= t) return 0.0;
  return pdf_occupation(y, t, params) * t * std::sin(2.0 * th);
}

}  // namespace

double occupation_total_mass(double t, const ModelParams& params, double tol) {
  if (!(t > 0.0)) throw DomainError("occupation_total_mass: t must be > 0");
  auto g = [&](double th) { return occ_theta_integrand(th, t, params); };
  return adaptive_quad(g, 0.0, kPi / 2.0, tol).value;
}

double cdf_occupation(double y, double t, const ModelParams& params,
                      double tol) {
  if (!(t > 0.0)) throw DomainError("cdf_occupation: t must be > 0");
  if (y <= 0.0) return 0.0;
  if (y >= t) return 1.0;
  const double th = std::asin(std::sqrt(y / t));
  auto g = [&](double u) { return occ_theta_integrand(u, t, params); };
  return adaptive_quad(g, 0.0, th, tol).value;
}

DensityCurve sample_curve(Law law, const std::vector<double>& grid, double t,
                          const ModelParams& params) {
  if (grid.size() < 2) throw DomainError("sample_curve: need at least 2 grid points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw DomainError("sample_curve: grid must be strictly increasing");
  if (law != Law::SteadyX && !(t > 0.0))
    throw DomainError("sample_curve: t must be > 0");
  if (law == Law::OccupationI &&
      (grid.front() <= 0.0 || grid.back() >= t))
    throw DomainError("sample_curve: occupation grid must lie inside (0, t)");
  if (law == Law::OccupationScaledT &&
      (grid.front() <= 0.0 || grid.back() >= 1.0))
    throw DomainError("sample_curve: scaled occupation grid must lie inside (0, 1)");

  DensityCurve curve{law, grid, std::vector<double>(grid.size()), params, t};
  const int n = static_cast<int>(grid.size());
  // Exceptions may not cross an OpenMP region; capture the first one and
  // rethrow after the join so callers see the usual error types.
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    try {
      switch (law) {
        case Law::TransientX: curve.values[i] = pdf_x(grid[i], t, params); break;
        case Law::SteadyX: curve.values[i] = pdf_x_steady(grid[i], params); break;
        case Law::OccupationI:
          curve.values[i] = pdf_occupation(grid[i], t, params);
          break;
        case Law::OccupationScaledT:
          curve.values[i] = pdf_occupation_scaled(grid[i], t, params);
          break;
      }
    } catch (...) {
#pragma omp critical(sample_curve_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return curve;
}

// ---------------------------------------------------------------------------
// Tabulated CDFs
// ---------------------------------------------------------------------------

double CdfTable::operator()(double x) const {
  double s = x;
  if (theta_param) {
    const double r = std::clamp(x / t, 0.0, 1.0);
    s = std::asin(std::sqrt(r));
  }
  if (s <= grid.front()) return cdf.front();
  if (s >= grid.back()) return cdf.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double h = grid[k + 1] - grid[k];
  const double u = (s - grid[k]) / h;
  const double u2 = u * u, u3 = u2 * u;
  return cdf[k] * (2.0 * u3 - 3.0 * u2 + 1.0) +
         deriv[k] * h * (u3 - 2.0 * u2 + u) +
         cdf[k + 1] * (-2.0 * u3 + 3.0 * u2) + deriv[k + 1] * h * (u3 - u2);
}

namespace {

CdfTable build_table(std::vector<double> grid,
                     const std::function<double(double)>& density,
                     bool theta_param, double t) {
  const int panels = static_cast<int>(grid.size()) - 1;
  std::vector<double> parts(panels);
#pragma omp parallel for schedule(dynamic, 8)
  for (int k = 0; k < panels; ++k)
    parts[k] = adaptive_quad(density, grid[k], grid[k + 1], 1e-15).value;

  CdfTable tab;
  tab.grid = std::move(grid);
  tab.theta_param = theta_param;
  tab.t = t;
  tab.cdf.resize(panels + 1);
  tab.deriv.resize(panels + 1);
  tab.cdf[0] = 0.0;
  for (int k = 0; k < panels; ++k) tab.cdf[k + 1] = tab.cdf[k] + parts[k];
  const int n = panels + 1;
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < n; ++k) {
    double s = tab.grid[k];
    if (theta_param) {
      // endpoints evaluated just inside the open support
      s = std::clamp(s, 1e-7, kPi / 2.0 - 1e-7);
    }
    tab.deriv[k] = density(s);
  }
  return tab;
}

}  // namespace

CdfTable make_cdf_table_x(double t, const ModelParams& params, int panels) {
  if (!(t > 0.0)) throw DomainError("make_cdf_table_x: t must be > 0");
  const double cut = x_cutoff(t, params.mu);
  std::vector<double> grid(panels + 1);
  for (int k = 0; k <= panels; ++k)
    grid[k] = -cut + 2.0 * cut * k / panels;
  auto dens = [t, params](double x) { return pdf_x(x, t, params); };
  return build_table(std::move(grid), dens, false, t);
}

CdfTable make_cdf_table_occupation(double t, const ModelParams& params,
                                   int panels) {
  if (!(t > 0.0)) throw DomainError("make_cdf_table_occupation: t must be > 0");
  std::vector<double> grid(panels + 1);
  for (int k = 0; k <= panels; ++k) grid[k] = kPi / 2.0 * k / panels;
  auto dens = [t, params](double th) {
    return occ_theta_integrand(th, t, params);
  };
  return build_table(std::move(grid), dens, true, t);
}

}  // namespace skewdry
