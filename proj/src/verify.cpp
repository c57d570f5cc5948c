#include "skewdry/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "skewdry/analytic.hpp"
#include "skewdry/simulate.hpp"
#include "skewdry/transforms.hpp"

namespace skewdry {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SpectralSample {
  ModelParams params;
  double z2;
  Complex p;
};

std::vector<SpectralSample> draw_spectral(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<SpectralSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double mu = 3.0 * u01(rng);
    const double eta = -0.95 + 1.9 * u01(rng);
    const double z2 = -10.0 + 20.0 * u01(rng);
    const Complex p(1e-3 + (10.0 - 1e-3) * u01(rng), -10.0 + 20.0 * u01(rng));
    out.push_back({params_new(mu, eta), z2, p});
  }
  return out;
}

CheckResult transform_normalization(std::mt19937_64& rng, int n) {
  double worst = 0.0;
  for (const auto& s : draw_spectral(rng, n)) {
    worst = std::max(worst, std::abs(s.p * e_tilde_x(0.0, s.p, s.params) - 1.0));
    worst = std::max(worst, std::abs(s.p * e_tilde_i(0.0, s.p, s.params) - 1.0));
  }
  return {"transform normalization E~_X(0,p) = E~_I(0,p) = 1/p", worst, 1e-13,
          worst < 1e-13, ""};
}

CheckResult removable_singularities(std::mt19937_64& rng, int n) {
  double worst = 0.0;
  for (const auto& s : draw_spectral(rng, n)) {
    const RootQuad r = roots(s.params, s.z2, s.p);
    const GPair g = g_coefficients(s.params, s.z2, s.p);
    const Complex kI(0.0, 1.0);
    const double scale =
        std::abs(g.g0) + std::abs(g.g1) * (std::abs(r.nu_plus) + std::abs(r.kappa_minus)) + 0.5;
    const Complex res_p =
        phi_tilde_numerator(+1, kI * r.nu_plus, s.params, s.z2, s.p);
    const Complex res_m =
        phi_tilde_numerator(-1, kI * r.kappa_minus, s.params, s.z2, s.p);
    worst = std::max(worst, std::max(std::abs(res_p), std::abs(res_m)) / scale);
  }
  return {"removable singularities at i*nu+ and i*kappa-", worst, 1e-12,
          worst < 1e-12, ""};
}

CheckResult root_identities(std::mt19937_64& rng, int n) {
  double worst = 0.0;
  for (const auto& s : draw_spectral(rng, n)) {
    const RootQuad r = roots(s.params, s.z2, s.p);
    const double mu = s.params.mu;
    const Complex kI(0.0, 1.0);
    const double sk = std::abs(r.kappa_plus) + std::abs(r.kappa_minus) + 1.0;
    const double sn = std::abs(r.nu_plus) + std::abs(r.nu_minus) + 1.0;
    worst = std::max(worst, std::abs(r.kappa_plus + r.kappa_minus - 2.0 * mu) / sk);
    worst = std::max(worst, std::abs(r.kappa_plus * r.kappa_minus + s.p) / (sk * sk));
    worst = std::max(worst, std::abs(r.nu_plus + r.nu_minus + 2.0 * mu) / sn);
    worst = std::max(worst,
                     std::abs(r.nu_plus * r.nu_minus - (kI * s.z2 - s.p)) / (sn * sn));
  }
  return {"root sum/product identities", worst, 1e-12, worst < 1e-12, ""};
}

std::vector<double> grid_mu(bool quick) {
  return quick ? std::vector<double>{0.0, 1.0}
               : std::vector<double>{0.0, 0.5, 1.0, 2.0};
}
std::vector<double> grid_eta(bool quick) {
  return quick ? std::vector<double>{-0.5, 0.0, 0.5}
               : std::vector<double>{-0.9, -0.5, 0.0, 0.5, 0.9};
}
std::vector<double> grid_t(bool quick) {
  return quick ? std::vector<double>{0.1, 1.0}
               : std::vector<double>{0.1, 1.0, 10.0};
}

CheckResult density_normalization(bool quick) {
  double worst_x = 0.0, worst_i = 0.0;
  for (double mu : grid_mu(quick))
    for (double eta : grid_eta(quick))
      for (double t : grid_t(quick)) {
        const ModelParams p = params_new(mu, eta);
        const double cut = 2.0 * mu * t + 14.0 * std::sqrt(t) + 25.0;
        const double mx =
            adaptive_quad([&](double x) { return pdf_x(x, t, p); }, -cut, cut,
                          1e-11)
                .value;
        worst_x = std::max(worst_x, std::abs(mx - 1.0));
        worst_i = std::max(worst_i, std::abs(occupation_total_mass(t, p) - 1.0));
      }
  std::ostringstream det;
  det << "f_X err " << worst_x << " (tol 1e-9), f_I err " << worst_i
      << " (tol 1e-6)";
  const bool pass = worst_x < 1e-9 && worst_i < 1e-6;
  return {"density normalization (f_X, f_I)", std::max(worst_x, worst_i),
          1e-6, pass, det.str()};
}

CheckResult jump_ratio_and_steady(bool quick, double alpha_bias) {
  double worst = 0.0;
  for (double mu : grid_mu(quick))
    for (double eta : grid_eta(quick))
      for (double t : grid_t(quick)) {
        const ModelParams p = params_new(mu, eta);
        // fault-injection path: evaluation side uses a biased alpha
        const ModelParams peval =
            alpha_bias == 0.0 ? p : params_new(mu, eta + 2.0 * alpha_bias);
        const double h = 1e-12;
        const double ratio = pdf_x(h, t, peval) / pdf_x(-h, t, peval);
        const double expect = p.alpha / (1.0 - p.alpha);
        worst = std::max(worst, std::abs(ratio / expect - 1.0));
      }
  double worst_steady = 0.0;
  for (double mu : {0.5, 1.0, 2.0})
    for (double eta : grid_eta(quick)) {
      const ModelParams p = params_new(mu, eta);
      for (int k = -40; k <= 40; ++k) {
        const double x = 0.1 * k;
        const double w = x > 0.0 ? p.alpha : 1.0 - p.alpha;
        const double expect = 2.0 * mu * std::exp(-2.0 * mu * std::abs(x)) * w;
        const double got = pdf_x_steady(x, p);
        worst_steady =
            std::max(worst_steady, std::abs(got - expect) / std::max(1e-30, expect));
      }
    }
  std::ostringstream det;
  det << "jump ratio err " << worst << " (tol 1e-12), steady pointwise err "
      << worst_steady << " (tol 1e-13)";
  const bool pass = worst < 1e-12 && worst_steady < 1e-13;
  return {"jump ratio alpha/(1-alpha) and steady-state law",
          std::max(worst, worst_steady), 1e-12, pass, det.str()};
}

CheckResult arcsine_reduction() {
  const ModelParams p = params_new(0.0, 0.0);
  double worst = 0.0;
  for (double t : {1.0, 2.0})
    for (int k = 1; k <= 99; ++k) {
      const double y = t * k / 100.0;
      const double expect = 1.0 / (kPi * std::sqrt(y * (t - y)));
      worst = std::max(worst,
                       std::abs(pdf_occupation(y, t, p) - expect) / expect);
    }
  return {"arcsine reduction at mu = 0, eta = 0", worst, 1e-10, worst < 1e-10,
          ""};
}

CheckResult mirror_symmetries(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double mu = 2.5 * u01(rng);
    const double eta = -0.9 + 1.8 * u01(rng);
    const double t = 0.2 + 4.8 * u01(rng);
    const ModelParams p = params_new(mu, eta);
    const ModelParams pm = mirror(p);
    const double x = -4.0 + 8.0 * u01(rng);
    const double fx = pdf_x(x, t, p);
    const double fxm = pdf_x(-x, t, pm);
    worst = std::max(worst, std::abs(fx - fxm) / std::max(1.0, fx));
    const double y = t * (0.05 + 0.9 * u01(rng));
    const double fi = pdf_occupation(y, t, p);
    const double fim = pdf_occupation(t - y, t, pm);
    worst = std::max(worst, std::abs(fi - fim) / std::max(1.0, fi));
  }
  return {"mirror symmetries f_X / f_I under eta -> -eta", worst, 1e-10,
          worst < 1e-10, ""};
}

CheckResult long_time_convergence() {
  double worst = 0.0;
  for (double eta : {-0.5, 0.0, 0.5}) {
    const ModelParams p = params_new(1.0, eta);
    for (int k = -200; k <= 200; ++k) {
      // x = 0 exactly is excluded: the transient density returns the right
      // (alpha) branch there while the steady-state formula takes the
      // (1-alpha) branch, so the two documented measure-zero conventions
      // differ at that single point whenever eta != 0.
      if (k == 0) continue;
      const double x = 0.025 * k;
      worst = std::max(worst, std::abs(pdf_x(x, 50.0, p) - pdf_x_steady(x, p)));
    }
  }
  return {"long-time convergence to the steady state", worst, 1e-8,
          worst < 1e-8, ""};
}

Complex fourier_cf_x(double z, double t, const ModelParams& p) {
  const double cut = 2.0 * p.mu * t + 14.0 * std::sqrt(t) + 25.0;
  const double re = adaptive_quad(
                        [&](double x) { return std::cos(z * x) * pdf_x(x, t, p); },
                        -cut, cut, 1e-9)
                        .value;
  const double im = adaptive_quad(
                        [&](double x) { return std::sin(z * x) * pdf_x(x, t, p); },
                        -cut, cut, 1e-9)
                        .value;
  return Complex(re, im);
}

Complex fourier_cf_i(double z, double t, const ModelParams& p) {
  auto g = [&](double th) {
    const double y = t * std::sin(th) * std::sin(th);
    if (y <= 0.0 || y >= t) return Complex(0.0, 0.0);
    const double jac = pdf_occupation(y, t, p) * t * std::sin(2.0 * th);
    return std::exp(Complex(0.0, z * y)) * jac;
  };
  const double re =
      adaptive_quad([&](double th) { return g(th).real(); }, 0.0, kPi / 2, 1e-8)
          .value;
  const double im =
      adaptive_quad([&](double th) { return g(th).imag(); }, 0.0, kPi / 2, 1e-8)
          .value;
  return Complex(re, im);
}

CheckResult cf_agreement(bool quick) {
  const std::vector<std::pair<double, double>> pars =
      quick ? std::vector<std::pair<double, double>>{{1.0, 0.5}, {0.5, -0.7}}
            : std::vector<std::pair<double, double>>{{1.0, 0.0}, {1.0, 0.5}, {0.5, -0.7}};
  const std::vector<double> ts = quick ? std::vector<double>{1.0}
                                       : std::vector<double>{0.5, 1.0, 2.0};
  const std::vector<double> zs =
      quick ? std::vector<double>{-5.0, -1.0, 1.0, 5.0}
            : std::vector<double>{-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0};
  double worst_x = 0.0, worst_i = 0.0;
  for (auto [mu, eta] : pars) {
    const ModelParams p = params_new(mu, eta);
    for (double t : ts)
      for (double z : zs) {
        worst_x = std::max(worst_x,
                           std::abs(cf_x_time(z, t, p) - fourier_cf_x(z, t, p)));
        worst_i = std::max(worst_i,
                           std::abs(cf_i_time(z, t, p) - fourier_cf_i(z, t, p)));
      }
  }
  std::ostringstream det;
  det << "cf_X err " << worst_x << " (tol 1e-5), cf_I err " << worst_i
      << " (tol 1e-4)";
  const bool pass = worst_x < 1e-5 && worst_i < 1e-4;
  return {"transform/analytic characteristic-function agreement",
          std::max(worst_x, worst_i), 1e-4, pass, det.str()};
}

CheckResult monte_carlo_ks(bool quick, std::uint64_t seed) {
  SimConfig cfg;
  cfg.horizon = 1.0;
  cfg.dt = quick ? 1e-3 : 1e-4;
  cfg.n_paths = quick ? 5000 : 100000;
  cfg.seed = seed;
  const double band = 1.95 / std::sqrt(static_cast<double>(cfg.n_paths));
  // Full scale uses the pinned thresholds; quick scale widens the KS band
  // for the smaller pool and coarser step.
  const double tol_x = quick ? band + 1.2e-2 : 6e-3;
  const double tol_i = quick ? band + 1.8e-2 : 1e-2;
  double worst_ratio = 0.0;
  std::ostringstream det;
  for (double eta : {0.0, 0.5}) {
    const ModelParams p = params_new(1.0, eta);
    const EmpiricalSummary sum = run_monte_carlo(p, cfg);
    const CdfTable cx = make_cdf_table_x(cfg.horizon, p);
    const CdfTable ci = make_cdf_table_occupation(cfg.horizon, p);
    const double dx = ks_distance(sum, std::cref(cx), Functional::XFinal);
    const double di = ks_distance(sum, std::cref(ci), Functional::Occupation);
    det << "eta=" << eta << ": KS_x=" << dx << "/" << tol_x << " KS_I=" << di
        << "/" << tol_i << "  ";
    worst_ratio = std::max({worst_ratio, dx / tol_x, di / tol_i});
  }
  return {"Monte Carlo vs analytic (KS)", worst_ratio, 1.0, worst_ratio < 1.0,
          det.str()};
}

CheckResult local_time_sanity(bool quick, std::uint64_t seed) {
  SimConfig cfg;
  cfg.horizon = 1.0;
  cfg.dt = quick ? 1e-3 : 1e-4;
  cfg.n_paths = quick ? 10000 : 100000;
  cfg.seed = seed + 1;
  const double mean = local_time_reference_check(params_new(0.0, 0.0), cfg);
  const double expect = 2.0 / std::sqrt(kPi);
  const double rel = std::abs(mean - expect) / expect;
  const double tol = quick ? 0.12 : 0.05;
  std::ostringstream det;
  det << "mean " << mean << " vs 2/sqrt(pi) = " << expect;
  return {"local-time estimator sanity", rel, tol, rel < tol, det.str()};
}

CheckResult reproducibility(std::uint64_t seed) {
  SimConfig cfg;
  cfg.horizon = 0.5;
  cfg.dt = 1e-3;
  cfg.n_paths = 256;
  cfg.seed = seed + 2;
  const ModelParams p = params_new(1.0, 0.3);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const EmpiricalSummary one = run_monte_carlo(p, cfg);
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  const EmpiricalSummary four = run_monte_carlo(p, cfg);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
  const EmpiricalSummary serial = run_monte_carlo_serial(p, cfg);
  bool same = one.paths == four.paths && one.paths == serial.paths;
  std::ostringstream a, b;
  write_paths_csv(one, a);
  write_paths_csv(four, b);
  same = same && a.str() == b.str();
  return {"reproducibility across worker counts", same ? 0.0 : 1.0, 0.5, same,
          ""};
}

CheckResult figure_datasets(bool quick) {
  const int nx = quick ? 241 : 601;
  std::vector<double> xg(nx);
  for (int i = 0; i < nx; ++i) xg[i] = -3.0 + 6.0 * i / (nx - 1);
  double worst_sym = 0.0;
  const DensityCurve c0 = sample_curve(Law::TransientX, xg, 1.0, params_new(1.0, 0.0));
  const DensityCurve cp = sample_curve(Law::TransientX, xg, 1.0, params_new(1.0, 0.5));
  const DensityCurve cm = sample_curve(Law::TransientX, xg, 1.0, params_new(1.0, -0.5));
  for (int i = 0; i < nx; ++i) {
    worst_sym = std::max(worst_sym, std::abs(c0.values[i] - c0.values[nx - 1 - i]));
    // the x = 0 grid point is skipped for eta != 0: both columns take the
    // right-branch convention there, so the mirror relation does not apply
    // at that single point
    if (xg[i] != 0.0)
      worst_sym = std::max(worst_sym, std::abs(cp.values[i] - cm.values[nx - 1 - i]));
  }
  const int nu = quick ? 99 : 199;
  std::vector<double> ug(nu);
  for (int i = 0; i < nu; ++i) ug[i] = 0.005 + (0.995 - 0.005) * i / (nu - 1);
  const DensityCurve f0 = sample_curve(Law::OccupationScaledT, ug, 2.0, params_new(1.0, 0.0));
  const DensityCurve fp = sample_curve(Law::OccupationScaledT, ug, 2.0, params_new(1.0, 0.5));
  const DensityCurve fm = sample_curve(Law::OccupationScaledT, ug, 2.0, params_new(1.0, -0.5));
  for (int i = 0; i < nu; ++i) {
    worst_sym = std::max(worst_sym, std::abs(f0.values[i] - f0.values[nu - 1 - i]));
    worst_sym = std::max(worst_sym, std::abs(fp.values[i] - fm.values[nu - 1 - i]));
  }
  double worst_mass = 0.0;
  for (double eta : {-0.5, 0.0, 0.5}) {
    const ModelParams p = params_new(1.0, eta);
    const double cut = 2.0 + 14.0 + 25.0;
    const double mx =
        adaptive_quad([&](double x) { return pdf_x(x, 1.0, p); }, -cut, cut, 1e-10)
            .value;
    worst_mass = std::max(worst_mass, std::abs(mx - 1.0));
    worst_mass = std::max(worst_mass, std::abs(occupation_total_mass(2.0, p) - 1.0));
  }
  std::ostringstream det;
  det << "mirror residual " << worst_sym << " (tol 1e-10), column mass err "
      << worst_mass << " (tol 1e-6)";
  const bool pass = worst_sym < 1e-10 && worst_mass < 1e-6;
  return {"figure datasets (symmetry and mass)", std::max(worst_sym, worst_mass),
          1e-6, pass, det.str()};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const int n_spectral = opts.quick ? 1000 : 10000;
  std::vector<CheckResult> results;
  results.push_back(transform_normalization(rng, n_spectral));
  results.push_back(removable_singularities(rng, n_spectral));
  results.push_back(root_identities(rng, n_spectral));
  results.push_back(density_normalization(opts.quick));
  results.push_back(jump_ratio_and_steady(opts.quick, opts.alpha_bias));
  results.push_back(arcsine_reduction());
  results.push_back(mirror_symmetries(rng, opts.quick ? 50 : 200));
  results.push_back(long_time_convergence());
  results.push_back(cf_agreement(opts.quick));
  results.push_back(monte_carlo_ks(opts.quick, opts.seed));
  results.push_back(local_time_sanity(opts.quick, opts.seed));
  results.push_back(reproducibility(opts.seed));
  results.push_back(figure_datasets(opts.quick));
  return results;
}

bool print_verification(const std::vector<CheckResult>& results,
                        std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof line, "[%s] %-55s measured %.3e  threshold %.3e",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                  r.threshold);
    out << line;
    if (!r.detail.empty()) out << "  | " << r.detail;
    out << "\n";
    all = all && r.pass;
  }
  out << (all ? "all checks passed\n" : "VERIFICATION FAILED\n");
  return all;
}

}  // namespace skewdry
