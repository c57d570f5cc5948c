// Command-line front end: density/transform evaluation to CSV, Monte Carlo
// simulation, the cross-verification suite, and the figure datasets.
//
// Exit codes: 0 success, 1 numerical failure / failed verification,
// 2 usage or validation error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewdry/analytic.hpp"
#include "skewdry/simulate.hpp"
#include "skewdry/transforms.hpp"
#include "skewdry/verify.hpp"

namespace {

using namespace skewdry;

struct GridSpec {
  double min = 0.0, max = 0.0;
  int count = 0;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char extra;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.min, &g.max, &g.count, &extra) != 3 ||
      g.count < 2 || !(g.min < g.max))
    throw CLI::ValidationError("--grid", "expected min:max:count with min < max, count >= 2");
  return g;
}

std::vector<double> expand(const GridSpec& g) {
  std::vector<double> xs(g.count);
  for (int i = 0; i < g.count; ++i)
    xs[i] = g.min + (g.max - g.min) * i / (g.count - 1);
  return xs;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CLI::ValidationError("--out", "cannot open " + path);
  f << content;
}

std::string curve_csv(const DensityCurve& c, const char* abscissa_name) {
  std::ostringstream out;
  out << abscissa_name << ",density\n";
  for (std::size_t i = 0; i < c.abscissae.size(); ++i)
    out << fmt(c.abscissae[i]) << ',' << fmt(c.values[i]) << '\n';
  return out.str();
}

std::vector<double> parse_eta_set(const std::string& s) {
  std::vector<double> etas;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) etas.push_back(std::stod(tok));
  if (etas.empty()) throw CLI::ValidationError("--eta-set", "empty");
  return etas;
}

std::string multi_curve_csv(const char* abscissa_name,
                            const std::vector<double>& grid,
                            const std::vector<double>& etas,
                            const std::vector<DensityCurve>& curves) {
  std::ostringstream out;
  out << abscissa_name;
  for (double eta : etas) out << ",eta=" << fmt(eta);
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << fmt(grid[i]);
    for (const auto& c : curves) out << ',' << fmt(c.values[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewdry: skew Brownian motion with dry friction - exact laws and Monte Carlo"};
  app.require_subcommand(1);

  double mu = 1.0, eta = 0.0, t = 1.0;
  std::string grid_str, out_path, which = "x", eta_set = "-0.5,0,0.5", out_dir = ".";
  std::int64_t paths = 10000;
  double dt = 1e-3, band_eps = 0.0;
  std::uint64_t seed = 0;
  bool quick = false, no_interp = false;
  int order = 16;
  double inject_alpha_bias = 0.0;

  auto add_model = [&](CLI::App* cmd, bool with_t) {
    cmd->add_option("--mu", mu, "friction magnitude (>= 0)");
    cmd->add_option("--eta", eta, "skewness in (-1, 1)");
    if (with_t) cmd->add_option("--t", t, "time horizon (> 0)");
  };

  auto* c_pdfx = app.add_subcommand("pdf-x", "transient density f_X(x, t) over a grid");
  add_model(c_pdfx, true);
  c_pdfx->add_option("--grid", grid_str, "x grid min:max:count")->required();
  c_pdfx->add_option("--out", out_path, "output file (default stdout)");

  auto* c_steady = app.add_subcommand("pdf-steady", "steady-state density f_X^inf(x)");
  add_model(c_steady, false);
  c_steady->add_option("--grid", grid_str, "x grid min:max:count")->required();
  c_steady->add_option("--out", out_path, "output file (default stdout)");

  auto* c_occ = app.add_subcommand("pdf-occupation", "occupation-time density f_I(y, t)");
  add_model(c_occ, true);
  c_occ->add_option("--grid", grid_str, "y grid min:max:count, inside (0, t)")->required();
  c_occ->add_option("--out", out_path, "output file (default stdout)");

  auto* c_cf = app.add_subcommand("cf", "time-domain characteristic function over a z grid");
  add_model(c_cf, true);
  c_cf->add_option("--which", which, "x (terminal state) or i (occupation time)")
      ->check(CLI::IsMember({"x", "i"}));
  c_cf->add_option("--grid", grid_str, "z grid min:max:count")->required();
  auto* opt_order = c_cf->add_option(
      "--order", order,
      "force Gaver-Stehfest inversion at this order (even, 8..18); "
      "default uses the method best suited to each target");
  c_cf->add_option("--out", out_path, "output file (default stdout)");

  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo paths of the SDE");
  add_model(c_sim, true);
  c_sim->add_option("--paths", paths, "number of trajectories");
  c_sim->add_option("--dt", dt, "time step");
  c_sim->add_option("--seed", seed, "RNG seed");
  c_sim->add_option("--eps", band_eps, "local-time band half-width (default sqrt(dt))");
  c_sim->add_flag("--no-interp", no_interp, "plain endpoint counting for the occupation time");
  c_sim->add_option("--out", out_path, "output file (default stdout)");

  auto* c_verify = app.add_subcommand("verify", "run the cross-layer verification suite");
  c_verify->add_flag("--quick", quick, "reduced sample sizes (< 60 s)");
  c_verify->add_option("--seed", seed, "RNG seed for the randomized checks");
  c_verify->add_option("--inject-alpha-bias", inject_alpha_bias)->group("");  // hidden

  auto* c_fig = app.add_subcommand("figures", "emit fig1.csv / fig2.csv datasets");
  c_fig->add_option("--eta-set", eta_set, "comma-separated eta values");
  c_fig->add_option("--out-dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_pdfx) {
      const auto g = expand(parse_grid(grid_str));
      write_out(out_path, curve_csv(sample_curve(Law::TransientX, g, t, params_new(mu, eta)), "x"));
    } else if (*c_steady) {
      const auto g = expand(parse_grid(grid_str));
      write_out(out_path, curve_csv(sample_curve(Law::SteadyX, g, t, params_new(mu, eta)), "x"));
    } else if (*c_occ) {
      const auto g = expand(parse_grid(grid_str));
      write_out(out_path, curve_csv(sample_curve(Law::OccupationI, g, t, params_new(mu, eta)), "y"));
    } else if (*c_cf) {
      const ModelParams p = params_new(mu, eta);
      const bool force_gs = opt_order->count() > 0;
      const LaplaceInverter inv = make_stehfest(order);
      const auto zs = expand(parse_grid(grid_str));
      std::ostringstream csv;
      csv << "z,re,im\n";
      for (double z : zs) {
        const Complex v = force_gs
                              ? (which == "x" ? cf_x_time(z, t, p, inv)
                                              : cf_i_time(z, t, p, inv))
                              : (which == "x" ? cf_x_time(z, t, p)
                                              : cf_i_time(z, t, p));
        csv << fmt(z) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
      }
      write_out(out_path, csv.str());
    } else if (*c_sim) {
      SimConfig cfg;
      cfg.dt = dt;
      cfg.horizon = t;
      cfg.n_paths = paths;
      cfg.seed = seed;
      cfg.band_epsilon = band_eps;
      cfg.interpolate_crossings = !no_interp;
      const EmpiricalSummary sum = run_monte_carlo(params_new(mu, eta), cfg);
      std::ostringstream csv;
      write_paths_csv(sum, csv);
      csv << "# n=" << sum.n << " mean_x=" << fmt(sum.mean_x)
          << " std_x=" << fmt(sum.std_x)
          << " mean_occupation=" << fmt(sum.mean_occupation)
          << " mean_local_time=" << fmt(sum.mean_local_time) << '\n';
      write_out(out_path, csv.str());
    } else if (*c_verify) {
      VerifyOptions opts;
      opts.quick = quick;
      opts.alpha_bias = inject_alpha_bias;
      if (c_verify->count("--seed")) opts.seed = seed;
      const auto results = run_verification(opts);
      if (!print_verification(results, std::cout)) return 1;
    } else if (*c_fig) {
      const auto etas = parse_eta_set(eta_set);
      std::vector<double> xg(601), ug(199);
      for (int i = 0; i < 601; ++i) xg[i] = -3.0 + 6.0 * i / 600.0;
      for (int i = 0; i < 199; ++i) ug[i] = 0.005 + (0.995 - 0.005) * i / 198.0;
      std::vector<DensityCurve> f1, f2;
      for (double e : etas) {
        f1.push_back(sample_curve(Law::TransientX, xg, 1.0, params_new(1.0, e)));
        f2.push_back(sample_curve(Law::OccupationScaledT, ug, 2.0, params_new(1.0, e)));
      }
      namespace fs = std::filesystem;
      write_out((fs::path(out_dir) / "fig1.csv").string(), multi_curve_csv("x", xg, etas, f1));
      write_out((fs::path(out_dir) / "fig2.csv").string(), multi_curve_csv("u", ug, etas, f2));
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
