// Timing comparison between the OpenMP kernels and their serial reference
// implementations: the Monte Carlo driver and the occupation-time density.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "skewdry/analytic.hpp"
#include "skewdry/simulate.hpp"

using namespace skewdry;
using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main() {
  const ModelParams p = params_new(1.0, 0.5);

  {
    SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 1.0;
    cfg.n_paths = 50000;
    cfg.seed = 7;

    auto t0 = clock_type::now();
    const EmpiricalSummary serial = run_monte_carlo_serial(p, cfg);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const EmpiricalSummary par = run_monte_carlo(p, cfg);
    const double t_par = seconds_since(t0);

    std::printf("monte_carlo  paths=%lld dt=%g threads=%d\n",
                static_cast<long long>(cfg.n_paths), cfg.dt,
                omp_get_max_threads());
    std::printf("  serial  %8.3f s\n", t_serial);
    std::printf("  openmp  %8.3f s   speedup %.2fx   identical=%s\n", t_par,
                t_serial / t_par, serial.paths == par.paths ? "yes" : "NO");
  }

  {
    const double t = 1.0;
    const int n_pts = 50;
    auto t0 = clock_type::now();
    double acc = 0.0;
    for (int i = 1; i <= n_pts; ++i)
      acc += pdf_occupation(t * i / (n_pts + 1.0), t, p);
    const double t_fast = seconds_since(t0);

    t0 = clock_type::now();
    double acc_ref = 0.0;
    for (int i = 1; i <= n_pts; ++i)
      acc_ref += pdf_occupation_reference(t * i / (n_pts + 1.0), t, p, 128);
    const double t_ref = seconds_since(t0);

    std::printf("occupation_density  %d evaluations\n", n_pts);
    std::printf("  quadrature reference  %8.3f s\n", t_ref);
    std::printf("  closed-form inner     %8.3f s   speedup %.2fx   max-diff %.3g\n",
                t_fast, t_ref / t_fast, std::abs(acc - acc_ref) / n_pts);
  }
  return 0;
}
