#ifndef SKEWDRY_ANALYTIC_HPP
#define SKEWDRY_ANALYTIC_HPP

#include <vector>

#include "skewdry/model.hpp"

namespace skewdry {

enum class Law { TransientX, SteadyX, OccupationI, OccupationScaledT };

/// A density sampled on a grid, with the parameters it was produced from.
struct DensityCurve {
  Law law;
  std::vector<double> abscissae;  // strictly increasing
  std::vector<double> values;     // finite, >= 0
  ModelParams params;
  double t = 0.0;  // horizon; unused for SteadyX
};

/// Transient density f_X(x, t): the erfc/Gaussian mixture weighted by alpha
/// on x > 0 and 1-alpha on x < 0. At x = 0 exactly, the right (alpha)
/// limit is returned.
double pdf_x(double x, double t, const ModelParams& params);

/// CDF of X(t) by adaptive quadrature of pdf_x with tail truncation where
/// the density drops below ~1e-18.
double cdf_x(double x, double t, const ModelParams& params);

/// Steady-state density 2*mu*exp(-2*mu*|x|) weighted alpha / 1-alpha.
/// The x = 0 point takes the 1-alpha branch. Requires mu > 0.
double pdf_x_steady(double x, const ModelParams& params);

/// Indicator chi^+ = 1 iff (1+eta)s1 - (1-eta)s2 > 0 (ties go to chi^-).
int chi_plus(double s1, double s2, const ModelParams& params);

/// Two-branch exponential kernel of the occupation-time density. Exponents
/// are combined before a single exp; the value itself is unbounded for
/// large arguments.
double chi(double s1, double s2, const ModelParams& params);

/// Occupation-time density f_I(y, t) on 0 < y < t. The inner integral of
/// the chi kernel is reduced to closed form in erfcx on each side of the
/// kink line; the outer integral is evaluated adaptively with every
/// exponential factor combined in log space.
double pdf_occupation(double y, double t, const ModelParams& params);

/// Serial reference: 2D Gauss-Laguerre product rule after u = s1^2,
/// v = s2^2, inner integral split at the kink. Accuracy is limited to
/// roughly 1e-3..1e-5 by the sqrt behaviour of the substituted integrand;
/// used to validate the closed-form path and in the benchmark.
double pdf_occupation_reference(double y, double t, const ModelParams& params,
                                int order);

/// Scaled occupation density f_T(u, t) = t * f_I(t*u, t), 0 < u < 1.
double pdf_occupation_scaled(double u, double t, const ModelParams& params);

/// Total mass of f_I(., t), computed with the y = t*sin^2(theta)
/// substitution that removes the inverse-square-root endpoints.
double occupation_total_mass(double t, const ModelParams& params,
                             double tol = 1e-9);

/// CDF of f_I(., t) at y, by the same substitution.
double cdf_occupation(double y, double t, const ModelParams& params,
                      double tol = 1e-9);

/// Evaluate a density law over a grid (grid points evaluated in parallel,
/// output order deterministic).
DensityCurve sample_curve(Law law, const std::vector<double>& grid, double t,
                          const ModelParams& params);

// ---------------------------------------------------------------------------
// Tabulated CDFs (cumulative panel quadrature + cubic Hermite queries);
// used for Kolmogorov-Smirnov tests against large Monte Carlo pools where
// per-sample adaptive quadrature would be wasteful.
// ---------------------------------------------------------------------------

struct CdfTable {
  std::vector<double> grid;   // parameter of the table (x, or theta)
  std::vector<double> cdf;    // cumulative values at grid points
  std::vector<double> deriv;  // dCDF/dparameter at grid points
  bool theta_param = false;   // occupation tables are parametrized by theta
  double t = 0.0;             // horizon (occupation tables)

  double operator()(double x) const;
};

CdfTable make_cdf_table_x(double t, const ModelParams& params,
                          int panels = 2048);
CdfTable make_cdf_table_occupation(double t, const ModelParams& params,
                                   int panels = 600);

}  // namespace skewdry

#endif
