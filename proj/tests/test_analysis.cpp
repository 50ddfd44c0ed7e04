#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dronecov/analysis.hpp"
#include "dronecov/interpolate.hpp"
#include "support/oracles.hpp"

using namespace dronecov;

namespace {
const EnvironmentParams& urban() { return find_environment(builtin_environments(), "urban"); }
}

TEST_CASE("q_function pins the standard values") {
  REQUIRE(q_function(0.0) == 0.5);
  // 95th percentile of the standard normal
  REQUIRE(std::abs(q_function(1.6449) - 0.05) < 1e-4);
  REQUIRE(q_function(10.0) < 1e-20);
  REQUIRE(q_function(-10.0) > 1.0 - 1e-20);
}

TEST_CASE("q_function tracks the series/continued-fraction reference to 1e-12") {
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    const double ref = static_cast<double>(oracle::q_reference(x));
    REQUIRE_THAT(q_function(x), Catch::Matchers::WithinRel(ref, 1e-12));
  }
}

TEST_CASE("q_function is monotone decreasing and bounded") {
  double prev = 1.0;
  for (double x = -12.0; x <= 12.0; x += 0.25) {
    const double q = q_function(x);
    REQUIRE(q >= 0.0);
    REQUIRE(q <= 1.0);
    REQUIRE(q <= prev);
    prev = q;
  }
}

TEST_CASE("interference integral vanishes on the empty annulus") {
  QuadratureSpec quad;
  REQUIRE(interference_integral(kPi / 4.0, urban(), kPi / 2.0, quad) == 0.0);
}

TEST_CASE("interference integral reduces to log-cosine for unit mean inverse shadowing") {
  EnvironmentParams flat = urban();
  flat.a_los = 0.0;
  flat.a_nlos = 0.0;
  flat.mu_los_db = 0.0;
  flat.mu_nlos_db = 0.0;
  QuadratureSpec quad;
  quad.rel_tol = 1e-12;
  for (double phi_c : {0.0, 0.2, 0.5}) {
    const double analytic = std::log(std::cos(phi_c) / std::cos(kPi / 4.0));
    REQUIRE_THAT(interference_integral(phi_c, flat, kPi / 2.0, quad),
                 Catch::Matchers::WithinRel(analytic, 1e-10));
  }
}

TEST_CASE("interference integral matches brute-force Simpson at a million panels") {
  QuadratureSpec quad;
  const double adaptive = interference_integral(0.0, urban(), kPi / 2.0, quad);
  auto integrand = [&](double phi) {
    const double p = los_probability(phi, urban());
    return std::tan(phi) * (p * mean_inverse_shadowing(phi, urban(), true) +
                            (1.0 - p) * mean_inverse_shadowing(phi, urban(), false));
  };
  const double brute = oracle::simpson(integrand, 0.0, kPi / 4.0, 1000000);
  REQUIRE_THAT(adaptive, Catch::Matchers::WithinRel(brute, 1e-8));
}

TEST_CASE("interference integral guards its domain") {
  QuadratureSpec quad;
  REQUIRE_THROWS_AS(interference_integral(-0.1, urban(), kPi / 2.0, quad), std::domain_error);
  REQUIRE_THROWS_AS(interference_integral(0.9, urban(), kPi / 2.0, quad), std::domain_error);
  REQUIRE_THROWS_AS(interference_integral(0.1, urban(), 2.0 * kMaxZenithAngle + 0.1, quad),
                    std::domain_error);
}

TEST_CASE("mean interference vanishes with the field and scales exactly with density") {
  QuadratureSpec quad;
  SystemConfig cfg;
  cfg.lambda = 0.0;
  REQUIRE(mean_aggregate_interference(0.1, cfg, urban(), quad) == 0.0);

  cfg = SystemConfig{};
  SystemConfig doubled = cfg;
  doubled.lambda = 2.0 * cfg.lambda;
  const double base = mean_aggregate_interference(0.1, cfg, urban(), quad);
  const double twice = mean_aggregate_interference(0.1, doubled, urban(), quad);
  REQUIRE(std::abs(twice - 2.0 * base) <= 1e-12 * std::abs(2.0 * base));
}

TEST_CASE("mean interference scales exactly with transmit power") {
  QuadratureSpec quad;
  SystemConfig cfg;
  SystemConfig stronger = cfg;
  stronger.pt_db = cfg.pt_db + 10.0;  // exactly 10x in linear units
  const double base = mean_aggregate_interference(0.1, cfg, urban(), quad);
  const double boosted = mean_aggregate_interference(0.1, stronger, urban(), quad);
  REQUIRE_THAT(boosted, Catch::Matchers::WithinRel(10.0 * base, 1e-12));
}

TEST_CASE("mean interference is altitude-free") {
  QuadratureSpec quad;
  SystemConfig low;
  low.h = 100.0;
  SystemConfig high;
  high.h = 1000.0;
  const double a = mean_aggregate_interference(0.1, low, urban(), quad);
  const double b = mean_aggregate_interference(0.1, high, urban(), quad);
  REQUIRE(std::abs(a - b) / a < 1e-6);
}

TEST_CASE("mean interference grows with beamwidth") {
  QuadratureSpec quad;
  double prev = 0.0;
  for (double deg : {40.0, 70.0, 90.0, 120.0, 150.0}) {
    SystemConfig cfg;
    cfg.phi_a = deg_to_rad(deg);
    const double mu = mean_aggregate_interference(0.0, cfg, urban(), quad);
    REQUIRE(mu >= prev);
    prev = mu;
  }
}

TEST_CASE("excess loss threshold hits 0 dB on a unit argument") {
  QuadratureSpec quad;
  SystemConfig cfg;
  cfg.lambda = 0.0;  // no interference
  const double lf = fspl(0.1, cfg.h, cfg.f);
  cfg.n0_db = cfg.pt_db - linear_to_db(lf) - cfg.t_db;
  REQUIRE_THAT(excess_loss_threshold_db(0.1, cfg, urban(), quad),
               Catch::Matchers::WithinAbs(0.0, 1e-10));
}

TEST_CASE("raising the threshold by 10 dB lowers psi by exactly 10 dB") {
  QuadratureSpec quad;
  SystemConfig cfg;
  SystemConfig strict = cfg;
  strict.t_db = cfg.t_db + 10.0;
  const double a = excess_loss_threshold_db(0.2, cfg, urban(), quad);
  const double b = excess_loss_threshold_db(0.2, strict, urban(), quad);
  REQUIRE_THAT(b, Catch::Matchers::WithinAbs(a - 10.0, 1e-10));
}

TEST_CASE("excess loss threshold equals the hand-composed chain") {
  QuadratureSpec quad;
  SystemConfig cfg;
  const double mu = mean_aggregate_interference(0.2, cfg, urban(), quad);
  const double expected = linear_to_db(
      cfg.pt_linear() / ((mu + cfg.n0_linear()) * fspl(0.2, cfg.h, cfg.f) * cfg.t_linear()));
  REQUIRE_THAT(excess_loss_threshold_db(0.2, cfg, urban(), quad),
               Catch::Matchers::WithinRel(expected, 1e-12));
}

TEST_CASE("interference profile: endpoint, monotonicity, interpolation accuracy") {
  QuadratureSpec quad;
  SystemConfig cfg;
  const InterferenceProfile profile = build_interference_profile(cfg, urban(), quad, 256);

  REQUIRE(profile.mu_values().back() == 0.0);
  REQUIRE(profile.mu_values().front() > 0.0);
  for (std::size_t i = 1; i < profile.mu_values().size(); ++i) {
    REQUIRE(profile.mu_values()[i] <= profile.mu_values()[i - 1]);
  }

  // interpolated mid-grid values against direct quadrature
  const auto& grid = profile.phi_grid();
  for (std::size_t i = 5; i + 5 < grid.size(); i += 50) {
    const double phi = 0.5 * (grid[i] + grid[i + 1]);
    const double direct = mean_aggregate_interference(phi, cfg, urban(), quad);
    REQUIRE_THAT(profile(phi), Catch::Matchers::WithinRel(direct, 1e-4));
  }
}

TEST_CASE("interference profile rejects tiny grids and mismatched configs") {
  QuadratureSpec quad;
  SystemConfig cfg;
  REQUIRE_THROWS_AS(build_interference_profile(cfg, urban(), quad, 8), ConfigError);

  const InterferenceProfile profile = build_interference_profile(cfg, urban(), quad);
  SystemConfig other = cfg;
  other.lambda *= 2.0;
  REQUIRE_THROWS_AS(coverage_probability(other, urban(), quad, profile), ConfigError);

  // altitude, noise, and threshold changes reuse the profile legitimately
  SystemConfig moved = cfg;
  moved.h = 1500.0;
  moved.n0_db = -140.0;
  moved.t_db = 0.0;
  REQUIRE_NOTHROW(coverage_probability(moved, urban(), quad, profile));
}

TEST_CASE("coverage probability limits: empty field and threshold-free ceiling") {
  QuadratureSpec quad;
  SystemConfig cfg;
  cfg.lambda = 0.0;
  REQUIRE(coverage_probability(cfg, urban(), quad) == 0.0);

  cfg = SystemConfig{};
  cfg.t_db = -200.0;
  const double p = coverage_probability(cfg, urban(), quad);
  REQUIRE(std::abs(p - nonvoid_probability(cfg)) < 1e-4);
}

TEST_CASE("coverage probability respects the void ceiling everywhere") {
  QuadratureSpec quad;
  RandomStream rng(13579, 0);
  for (int i = 0; i < 5; ++i) {
    SystemConfig cfg;
    cfg.h = 50.0 + 1950.0 * rng.uniform01();
    cfg.lambda = std::pow(10.0, -7.0 + 2.0 * rng.uniform01());
    cfg.phi_a = deg_to_rad(20.0 + 130.0 * rng.uniform01());
    cfg.t_db = -20.0 + 25.0 * rng.uniform01();
    const double p = coverage_probability(cfg, urban(), quad);
    REQUIRE(p >= 0.0);
    REQUIRE(p <= nonvoid_probability(cfg));
  }
}

TEST_CASE("profile-backed coverage agrees with true nested quadrature") {
  QuadratureSpec quad;
  SystemConfig cfg;
  const double fast = coverage_probability(cfg, urban(), quad);
  const double exact = coverage_probability_exact(cfg, urban(), quad);
  REQUIRE(std::abs(fast - exact) < 1e-6);
}

TEST_CASE("halving the tolerance moves the outputs by less than the coarser tolerance") {
  SystemConfig cfg;
  QuadratureSpec coarse;
  coarse.rel_tol = 1e-6;
  coarse.abs_tol = 1e-10;
  QuadratureSpec fine = coarse;
  fine.rel_tol /= 2.0;

  const double p1 = coverage_probability(cfg, urban(), coarse);
  const double p2 = coverage_probability(cfg, urban(), fine);
  REQUIRE(std::abs(p1 - p2) <= coarse.rel_tol * std::abs(p1) + coarse.abs_tol);

  const double l1 = avg_los_closest(cfg, urban(), coarse);
  const double l2 = avg_los_closest(cfg, urban(), fine);
  REQUIRE(std::abs(l1 - l2) <= coarse.rel_tol * std::abs(l1) + coarse.abs_tol);

  const double m1 = mean_aggregate_interference(0.1, cfg, urban(), coarse);
  const double m2 = mean_aggregate_interference(0.1, cfg, urban(), fine);
  REQUIRE(std::abs(m1 - m2) <= coarse.rel_tol * std::abs(m1) + coarse.abs_tol);
}

TEST_CASE("average serving-drone LoS probability: limits and closed-form reduction") {
  QuadratureSpec quad;
  SystemConfig cfg;
  cfg.phi_a = 1e-4;
  REQUIRE(avg_los_closest(cfg, urban(), quad) < 1e-6);

  cfg = SystemConfig{};
  EnvironmentParams certain = urban();
  certain.beta1 = 1.0;
  certain.beta2 = 0.0;  // P_LoS == 1 everywhere: reduces to the non-void probability
  const double expected = nonvoid_probability(cfg);
  REQUIRE_THAT(avg_los_closest(cfg, certain, quad), Catch::Matchers::WithinRel(expected, 1e-10));
}

TEST_CASE("average serving-drone LoS probability never decreases with beamwidth") {
  QuadratureSpec quad;
  double prev = 0.0;
  for (int i = 0; i < 29; ++i) {
    SystemConfig cfg;
    cfg.phi_a = deg_to_rad(10.0 + 140.0 * i / 28.0);
    const double p = avg_los_closest(cfg, urban(), quad);
    REQUIRE(p >= prev - 1e-10);
    prev = p;
  }
}

TEST_CASE("monotone cubic interpolator reproduces nodes and preserves monotonicity") {
  std::vector<double> x{0.0, 0.5, 1.0, 1.7, 2.0, 3.0};
  std::vector<double> y{10.0, 8.0, 7.5, 3.0, 2.9, 0.0};
  const MonotoneCubicInterpolator interp(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    REQUIRE_THAT(interp(x[i]), Catch::Matchers::WithinAbs(y[i], 1e-12));
  }
  double prev = interp(0.0);
  for (double q = 0.0; q <= 3.0; q += 0.005) {
    const double v = interp(q);
    REQUIRE(v <= prev + 1e-12);
    prev = v;
  }
  // clamped beyond the node range
  REQUIRE(interp(-1.0) == y.front());
  REQUIRE(interp(9.0) == y.back());
}

TEST_CASE("monotone cubic interpolator tracks a smooth function closely") {
  std::vector<double> x, y;
  for (int i = 0; i <= 64; ++i) {
    x.push_back(i / 64.0);
    y.push_back(std::exp(-2.0 * x.back()));
  }
  const MonotoneCubicInterpolator interp(x, y);
  for (double q = 0.01; q < 1.0; q += 0.017) {
    REQUIRE_THAT(interp(q), Catch::Matchers::WithinRel(std::exp(-2.0 * q), 1e-4));
  }
}
