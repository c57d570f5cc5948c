#ifndef SKEWDRY_SIMULATE_HPP
#define SKEWDRY_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "skewdry/model.hpp"

namespace skewdry {

struct SimConfig {
  double dt = 1e-3;
  double horizon = 1.0;
  std::int64_t n_paths = 10000;
  std::uint64_t seed = 0;
  double band_epsilon = 0.0;  // local-time band half-width; 0 -> sqrt(dt)
  bool interpolate_crossings = true;  // endpoint counting when false
  std::uint64_t mem_cap_bytes = 1ull << 31;
};

/// Per-trajectory functionals at the horizon.
struct PathFunctionals {
  double x_final = 0.0;
  double occupation = 0.0;      // in [0, horizon]
  double local_time_est = 0.0;  // >= 0

  bool operator==(const PathFunctionals&) const = default;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;  // size edges.size()-1; sums to n
};

struct EmpiricalSummary {
  std::int64_t n = 0;
  std::vector<PathFunctionals> paths;  // stream order, index = stream_id
  std::vector<double> sorted_x;
  std::vector<double> sorted_occupation;
  Histogram hist_x;
  double mean_x = 0.0, std_x = 0.0;
  double mean_occupation = 0.0;
  double mean_local_time = 0.0;

  double ecdf_x(double x) const;
  double ecdf_occupation(double y) const;
};

enum class Functional { XFinal, Occupation };

/// One trajectory of the skew Euler scheme from X(0) = 0, with the
/// occupation and local-time functionals accumulated along the way. The
/// random stream is derived from (config.seed, stream_id) only, so the
/// result is a pure function of its arguments.
PathFunctionals simulate_path(const ModelParams& params,
                              const SimConfig& config,
                              std::int64_t stream_id);

/// n_paths independent trajectories; deterministic for a fixed seed
/// regardless of thread count. OpenMP-parallel over paths.
EmpiricalSummary run_monte_carlo(const ModelParams& params,
                                 const SimConfig& config);

/// Serial reference loop; produces bit-identical summaries.
EmpiricalSummary run_monte_carlo_serial(const ModelParams& params,
                                        const SimConfig& config);

/// Sup-norm distance between the empirical CDF of the chosen functional
/// and a model CDF.
double ks_distance(const EmpiricalSummary& summary,
                   const std::function<double(double)>& cdf,
                   Functional which);

/// Two-sample Kolmogorov-Smirnov statistic over raw pools.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Mean local-time estimate at the horizon for the driftless symmetric
/// configuration (mu = 0, eta = 0), to compare against 2*sqrt(t/pi).
double local_time_reference_check(const ModelParams& params,
                                  const SimConfig& config);

/// Raw per-path dump: header plus one `stream_id,x_final,occupation,local_time`
/// record per path.
void write_paths_csv(const EmpiricalSummary& summary, std::ostream& out);

}  // namespace skewdry

#endif
