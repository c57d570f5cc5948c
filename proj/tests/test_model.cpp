#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skewdry/model.hpp"

using namespace skewdry;

TEST_CASE("params_new populates alpha") {
  const ModelParams p = params_new(1.0, 0.0);
  CHECK(p.mu == 1.0);
  CHECK(p.eta == 0.0);
  CHECK(p.alpha == 0.5);

  const ModelParams q = params_new(1.0, 0.5);
  CHECK(q.alpha == 0.75);
}

TEST_CASE("params_new rejects invalid input") {
  CHECK_THROWS_AS(params_new(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(params_new(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(params_new(1.0, 1.5), DomainError);
  CHECK_THROWS_AS(params_new(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(params_new(std::nan(""), 0.0), DomainError);
  CHECK_THROWS_AS(params_new(1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(params_new(HUGE_VAL, 0.0), DomainError);
  CHECK_NOTHROW(params_new(0.0, 0.0));  // mu = 0 admitted
}

TEST_CASE("mirror negates eta and fixes mu") {
  const ModelParams p = params_new(1.0, 0.5);
  const ModelParams m = mirror(p);
  CHECK(m.mu == 1.0);
  CHECK(m.eta == -0.5);
  CHECK(m.alpha == doctest::Approx(0.25).epsilon(1e-15));

  const ModelParams s = mirror(params_new(1.0, 0.0));
  CHECK(s.eta == 0.0);  // fixed point
}

TEST_CASE("mirror is an involution; alpha complements") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> ueta(-0.99, 0.99), umu(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double mu = umu(rng), eta = ueta(rng);
    const ModelParams p = params_new(mu, eta);
    const ModelParams mm = mirror(mirror(p));
    CHECK(mm.mu == p.mu);
    CHECK(mm.eta == p.eta);
    CHECK(mm.alpha == p.alpha);
    CHECK(p.alpha + params_new(mu, -eta).alpha == doctest::Approx(1.0).epsilon(1e-15));
  }
}
