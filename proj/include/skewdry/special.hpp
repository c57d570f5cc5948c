#ifndef SKEWDRY_SPECIAL_HPP
#define SKEWDRY_SPECIAL_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "skewdry/errors.hpp"

namespace skewdry {

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Complementary error function, full double precision.
double erfc(double x);

/// Scaled complementary error function exp(x^2)*erfc(x). Stable for large
/// positive x where erfc underflows; overflows for x < -26.6.
double erfcx(double x);

/// Principal complex square root, Re(result) >= 0.
std::complex<double> sqrt_principal(std::complex<double> w);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class QuadKind { GaussLaguerre, Adaptive1D };

/// Nodes/weights of a quadrature rule. For GaussLaguerre the weight function
/// is e^{-x} on [0, inf); weights sum to 1.
struct QuadratureRule {
  QuadKind kind;
  int order;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive (may underflow to 0 for n > ~180)
};

/// Gauss-Laguerre rule of order n via Golub-Welsch, 1 <= n <= 256.
QuadratureRule gauss_laguerre(int n);

/// Gauss-Legendre rule on [-1, 1] (weights sum to 2), same machinery.
QuadratureRule gauss_legendre(int n);

struct QuadResult {
  double value;
  double err_estimate;
};

/// Adaptive Gauss-Kronrod (7,15) over [a, b]. b may be +infinity, in which
/// case the tail is mapped with x = a - log(1-u); the integrand must decay
/// at least exponentially. Throws ConvergenceError when the subdivision
/// limit is reached before the tolerance.
QuadResult adaptive_quad(const std::function<double(double)>& f, double a,
                         double b, double tol);

// ---------------------------------------------------------------------------
// Numerical Laplace inversion (Gaver-Stehfest)
// ---------------------------------------------------------------------------

enum class InvertMethod { GaverStehfest };

/// Precomputed Stehfest weights for an even order in {8..18}. The double
/// precision accuracy ceiling of the method is about 1e-6..1e-8 (absolute,
/// relative to the scale of the time function); order 14 is the default,
/// order 16 is the sweet spot before alternating-sum roundoff takes over.
struct LaplaceInverter {
  InvertMethod method = InvertMethod::GaverStehfest;
  int order = 14;
  std::vector<double> coefficients;
};

LaplaceInverter make_stehfest(int order = 14);

/// f(t) ~ (ln2/t) * sum_k V_k F(k ln2/t). F is evaluated at real p > 0 only.
/// Throws NumericalInstability when partial sums exceed `magnitude_bound`
/// times the final scale (cancellation blow-up), EvaluationError is
/// propagated from F.
double laplace_invert(const std::function<double(double)>& F, double t,
                      const LaplaceInverter& inv,
                      double magnitude_bound = 1e12);

/// Fourier-series inversion with Euler summation (Abate-Whitt). Evaluates F
/// along the vertical line Re(p) = a_decay/(2t) > 0, so the branch handling
/// guarantees of the real-abscissa method carry over. Unlike Gaver-Stehfest
/// it keeps full accuracy for time functions that oscillate (bounded
/// characteristic-function targets); used for the occupation-time cf, whose
/// two rotating components the real-abscissa method cannot separate.
/// The time function must be real-valued; invert real and imaginary parts
/// of a complex target separately.
double laplace_invert_oscillatory(
    const std::function<std::complex<double>(std::complex<double>)>& F,
    double t, int n_terms = 24, int m_euler = 14, double a_decay = 18.4);

}  // namespace skewdry

#endif
