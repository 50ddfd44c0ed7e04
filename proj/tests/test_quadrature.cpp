#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dronecov/quadrature.hpp"
#include "support/oracles.hpp"

using dronecov::integrate;
using dronecov::QuadratureSpec;

TEST_CASE("polynomials and smooth integrands hit analytic values") {
  QuadratureSpec quad;
  REQUIRE_THAT(integrate([](double x) { return x * x; }, 0.0, 1.0, quad),
               Catch::Matchers::WithinRel(1.0 / 3.0, 1e-14));
  REQUIRE_THAT(integrate([](double x) { return std::sin(x); }, 0.0, dronecov::kPi, quad),
               Catch::Matchers::WithinRel(2.0, 1e-13));
  REQUIRE_THAT(integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, quad),
               Catch::Matchers::WithinRel(std::sin(50.0) / 50.0, 1e-10));
}

TEST_CASE("empty interval integrates to exactly zero") {
  QuadratureSpec quad;
  REQUIRE(integrate([](double x) { return std::exp(x); }, 0.7, 0.7, quad) == 0.0);
}

TEST_CASE("agrees with brute-force Simpson on an irregular smooth integrand") {
  QuadratureSpec quad;
  auto f = [](double x) { return std::exp(-3.0 * x) * std::tan(x) + std::pow(1.3 - x, 0.37); };
  const double adaptive = integrate(f, 0.0, 1.2, quad);
  const double brute = oracle::simpson(f, 0.0, 1.2, 1000000);
  REQUIRE_THAT(adaptive, Catch::Matchers::WithinRel(brute, 1e-8));
}

TEST_CASE("exhausted budget raises ToleranceError carrying the estimate") {
  QuadratureSpec quad;
  quad.rel_tol = 1e-14;
  quad.abs_tol = 0.0;
  quad.max_subdivisions = 4;
  auto f = [](double x) { return 1.0 / std::sqrt(x); };  // integrable endpoint singularity
  try {
    integrate(f, 1e-12, 1.0, quad);
    FAIL("expected ToleranceError");
  } catch (const dronecov::ToleranceError& err) {
    REQUIRE(err.error_estimate() > 0.0);
    REQUIRE(err.estimate() > 0.0);
    REQUIRE(std::abs(err.estimate() - 2.0) < 0.5);  // true value ~ 2(1 - 1e-6)
  }
}

TEST_CASE("singularity converges once the budget is generous") {
  QuadratureSpec quad;
  quad.rel_tol = 1e-10;
  quad.abs_tol = 0.0;
  quad.max_subdivisions = 10000;
  const double got = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, quad);
  REQUIRE_THAT(got, Catch::Matchers::WithinRel(2.0 - 2e-6, 1e-9));
}

TEST_CASE("invalid quadrature specs are rejected") {
  QuadratureSpec quad;
  quad.rel_tol = 0.0;
  REQUIRE_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, quad), dronecov::ConfigError);
  quad = QuadratureSpec{};
  quad.inner_tol_ratio = 0.5;
  REQUIRE_THROWS_AS(dronecov::validate(quad), dronecov::ConfigError);
}

TEST_CASE("inner_spec tightens both tolerances by the ratio") {
  QuadratureSpec quad;
  quad.rel_tol = 1e-6;
  quad.abs_tol = 1e-10;
  quad.inner_tol_ratio = 10.0;
  const QuadratureSpec inner = dronecov::inner_spec(quad);
  REQUIRE_THAT(inner.rel_tol, Catch::Matchers::WithinRel(1e-7, 1e-12));
  REQUIRE_THAT(inner.abs_tol, Catch::Matchers::WithinRel(1e-11, 1e-12));
}
