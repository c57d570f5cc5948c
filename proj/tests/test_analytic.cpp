#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "skewdry/analytic.hpp"
#include "skewdry/special.hpp"

using namespace skewdry;

namespace {
constexpr double kPi = 3.14159265358979323846;
// Frozen from an independent arbitrary-precision evaluation of the transient
// density formula at x=0, t=1, mu=1, eta=0.
constexpr double kPdfX0 = 1.02512727083000611051;
}  // namespace

TEST_CASE("pdf_x symmetry, jump ratio and frozen value") {
  const ModelParams sym = params_new(1.0, 0.0);
  for (double x : {0.3, 1.0, 2.7}) {
    CHECK(pdf_x(x, 1.0, sym) == doctest::Approx(pdf_x(-x, 1.0, sym)).epsilon(1e-14));
  }
  CHECK(std::abs(pdf_x(0.0, 1.0, sym) - kPdfX0) < 1e-12);

  const ModelParams p = params_new(0.7, 0.4);
  const double ratio = p.alpha / (1.0 - p.alpha);
  for (double x : {0.1, 0.5, 2.0}) {
    for (double t : {0.2, 1.0, 5.0}) {
      CHECK(pdf_x(x, t, p) / pdf_x(-x, t, p) ==
            doctest::Approx(ratio).epsilon(1e-13));
    }
  }
  // x = 0 takes the right (alpha) branch
  CHECK(pdf_x(0.0, 1.0, p) == doctest::Approx(pdf_x(1e-300, 1.0, p)).epsilon(1e-14));

  CHECK_THROWS_AS(pdf_x(0.0, 0.0, p), DomainError);
  CHECK_THROWS_AS(pdf_x(0.0, -1.0, p), DomainError);
}

TEST_CASE("pdf_x stays finite far out and for large drift") {
  for (double x : {-50.0, -10.0, 10.0, 50.0}) {
    for (double t : {0.01, 1.0, 100.0}) {
      const double v = pdf_x(x, t, params_new(2.0, -0.9));
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("cdf_x limits and skew split at the origin") {
  const ModelParams p = params_new(1.0, 0.5);
  CHECK(std::abs(cdf_x(100.0, 1.0, p) - 1.0) < 1e-9);
  CHECK(std::abs(cdf_x(-100.0, 1.0, p)) < 1e-9);
  CHECK(std::abs(cdf_x(0.0, 1.0, params_new(1.0, 0.0)) - 0.5) < 1e-10);
  // mass on the negative half-line is 1 - alpha
  for (double eta : {-0.6, 0.2, 0.8}) {
    const ModelParams q = params_new(1.5, eta);
    CHECK(std::abs(cdf_x(0.0, 2.0, q) - (1.0 - q.alpha)) < 1e-9);
  }
  // monotone
  double prev = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.5) {
    const double c = cdf_x(x, 1.0, p);
    CHECK(c >= prev - 1e-12);
    prev = c;
  }
}

TEST_CASE("pdf_x_steady two-sided exponential") {
  const ModelParams sym = params_new(1.0, 0.0);
  CHECK(pdf_x_steady(1e-12, sym) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(pdf_x_steady(0.0, params_new(0.0, 0.0)), DomainError);

  const ModelParams p = params_new(0.8, 0.5);
  // x = 0 takes the (1 - alpha) branch
  CHECK(pdf_x_steady(0.0, p) ==
        doctest::Approx(2.0 * p.mu * (1.0 - p.alpha)).epsilon(1e-15));
  for (double x : {0.5, 2.0}) {
    CHECK(pdf_x_steady(x, p) ==
          doctest::Approx(2.0 * p.mu * std::exp(-2.0 * p.mu * x) * p.alpha)
              .epsilon(1e-13));
    CHECK(pdf_x_steady(-x, p) ==
          doctest::Approx(2.0 * p.mu * std::exp(-2.0 * p.mu * x) * (1.0 - p.alpha))
              .epsilon(1e-13));
  }

  // normalization and mean eta/(2 mu)
  const auto mass = adaptive_quad([&](double x) { return pdf_x_steady(x, p); },
                                  -40.0, 40.0, 1e-13);
  CHECK(std::abs(mass.value - 1.0) < 1e-12);
  const auto mean = adaptive_quad(
      [&](double x) { return x * pdf_x_steady(x, p); }, -40.0, 40.0, 1e-13);
  CHECK(std::abs(mean.value - p.eta / (2.0 * p.mu)) < 1e-10);
}

TEST_CASE("chi kernel: degenerate case, tie rule, mirror identity") {
  const ModelParams deg = params_new(0.0, 0.0);
  for (double s1 : {0.0, 0.3, 2.0})
    for (double s2 : {0.0, 1.1, 4.0})
      CHECK(chi(s1, s2, deg) == doctest::Approx(1.0).epsilon(1e-15));

  // boundary (1+eta)s1 = (1-eta)s2 goes to the chi^- branch
  CHECK(chi_plus(1.0, 1.0, deg) == 0);
  CHECK(chi_plus(1.0 + 1e-12, 1.0, deg) == 1);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> us(0.0, 4.0), ue(-0.9, 0.9), um(0.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double s1 = us(rng), s2 = us(rng);
    const ModelParams p = params_new(um(rng), ue(rng));
    const ModelParams m = mirror(p);
    const double a = chi(s1, s2, p), b = chi(s2, s1, m);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("occupation density: arcsine reduction and domain errors") {
  const ModelParams deg = params_new(0.0, 0.0);
  for (double t : {1.0, 2.0}) {
    for (int i = 1; i <= 19; ++i) {
      const double y = t * i / 20.0;
      const double expect = 1.0 / (kPi * std::sqrt(y * (t - y)));
      CHECK(std::abs(pdf_occupation(y, t, deg) - expect) < 1e-10 * expect);
    }
  }
  CHECK_THROWS_AS(pdf_occupation(0.0, 1.0, deg), DomainError);
  CHECK_THROWS_AS(pdf_occupation(1.0, 1.0, deg), DomainError);
  CHECK_THROWS_AS(pdf_occupation(-0.1, 1.0, deg), DomainError);
}

TEST_CASE("occupation density: mirror symmetry on random inputs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uy(0.05, 0.95), ue(-0.85, 0.85),
      um(0.0, 2.0), ut(0.3, 4.0);
  for (int i = 0; i < 40; ++i) {
    const double t = ut(rng), y = t * uy(rng);
    const ModelParams p = params_new(um(rng), ue(rng));
    const double a = pdf_occupation(y, t, p);
    const double b = pdf_occupation(t - y, t, mirror(p));
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("occupation density: normalization and reference agreement") {
  for (const auto& [mu, eta] : std::vector<std::pair<double, double>>{
           {1.0, 0.0}, {1.0, 0.5}, {0.5, -0.7}, {2.0, 0.9}}) {
    const ModelParams p = params_new(mu, eta);
    for (double t : {0.5, 2.0}) {
      CHECK(std::abs(occupation_total_mass(t, p) - 1.0) < 1e-6);
    }
  }
  // the quadrature reference path (limited by the sqrt substitution to a
  // few digits) agrees with the closed-form inner integral
  const ModelParams p = params_new(1.0, 0.5);
  for (double y : {0.25, 0.5, 0.8}) {
    const double fast = pdf_occupation(y, 1.0, p);
    const double ref = pdf_occupation_reference(y, 1.0, p, 128);
    CHECK(std::abs(fast - ref) < 5e-4 * std::max(1.0, fast));
  }
}

TEST_CASE("scaled occupation density") {
  const ModelParams deg = params_new(0.0, 0.0);
  for (double u : {0.1, 0.5, 0.9}) {
    const double expect = 1.0 / (kPi * std::sqrt(u * (1.0 - u)));
    CHECK(std::abs(pdf_occupation_scaled(u, 1.0, deg) - expect) < 1e-10 * expect);
    CHECK(std::abs(pdf_occupation_scaled(u, 3.0, deg) - expect) < 1e-10 * expect);
  }
  const ModelParams p = params_new(1.0, 0.4);
  for (double u : {0.2, 0.65}) {
    CHECK(pdf_occupation_scaled(u, 2.0, p) ==
          doctest::Approx(2.0 * pdf_occupation(2.0 * u, 2.0, p)).epsilon(1e-13));
    CHECK(std::abs(pdf_occupation_scaled(u, 2.0, p) -
                   pdf_occupation_scaled(1.0 - u, 2.0, mirror(p))) < 1e-10);
  }
}

TEST_CASE("cdf_occupation endpoints and monotonicity") {
  const ModelParams p = params_new(1.0, 0.5);
  const double t = 1.0;
  CHECK(std::abs(cdf_occupation(t, t, p) - 1.0) < 2e-6);
  double prev = -1.0;
  for (double y = 0.1; y < t; y += 0.2) {
    const double c = cdf_occupation(y, t, p);
    CHECK(c >= prev);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-9);
    prev = c;
  }
}

TEST_CASE("sample_curve grids, finiteness and validation") {
  std::vector<double> xg;
  for (int i = 0; i <= 60; ++i) xg.push_back(-3.0 + 0.1 * i);
  const ModelParams p = params_new(1.0, 0.5);
  const DensityCurve c = sample_curve(Law::TransientX, xg, 1.0, p);
  REQUIRE(c.values.size() == xg.size());
  CHECK(c.law == Law::TransientX);
  for (double v : c.values) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  // pointwise agreement with the scalar evaluator
  CHECK(c.values[30] == pdf_x(xg[30], 1.0, p));

  std::vector<double> bad = {0.5, 0.5};  // not strictly increasing
  CHECK_THROWS_AS(sample_curve(Law::TransientX, bad, 1.0, p), DomainError);
  std::vector<double> outside = {0.1, 1.5};  // outside (0, t)
  CHECK_THROWS_AS(sample_curve(Law::OccupationI, outside, 1.0, p), DomainError);
}

TEST_CASE("cdf tables reproduce the adaptive CDFs") {
  const ModelParams p = params_new(1.0, 0.5);
  const double t = 1.0;
  const CdfTable tx = make_cdf_table_x(t, p);
  for (double x : {-2.5, -0.7, 0.0, 0.4, 1.9}) {
    CHECK(std::abs(tx(x) - cdf_x(x, t, p)) < 1e-8);
  }
  CHECK(tx(-1e9) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tx(1e9) == doctest::Approx(1.0).epsilon(1e-12));

  const CdfTable ti = make_cdf_table_occupation(t, p);
  for (double y : {0.1, 0.33, 0.5, 0.77, 0.95}) {
    CHECK(std::abs(ti(y) - cdf_occupation(y, t, p)) < 1e-6);
  }
}
