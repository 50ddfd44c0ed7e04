#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "dronecov/channel.hpp"
#include "dronecov/config.hpp"
#include "dronecov/core.hpp"
#include "dronecov/environment.hpp"
#include "dronecov/geometry.hpp"
#include "dronecov/interpolate.hpp"
#include "dronecov/quadrature.hpp"

namespace dronecov {

inline constexpr int kDefaultProfileGridSize = 256;

/// Standard normal tail probability P[Z > x].
inline double q_function(double x) {
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

namespace detail {

/// exp(-lambda*pi*h^2*tan^2(phi)) evaluated through the log so that dense
/// fields underflow cleanly to a zero contribution instead of raising.
inline double void_weight(double lambda, double h, double phi) {
  const double t = std::tan(phi);
  const double arg = -lambda * kPi * h * h * t * t;
  return arg < -745.0 ? 0.0 : std::exp(arg);
}

inline void require_cone_domain(double phi_c, double phi_a, const char* where) {
  if (!(phi_a > 0.0 && 0.5 * phi_a <= kMaxZenithAngle)) {
    throw std::domain_error(std::string(where) + ": phi_a/2 must lie in (0, 5*pi/12]");
  }
  if (!(phi_c >= 0.0 && phi_c <= 0.5 * phi_a)) {
    throw std::domain_error(std::string(where) + ": phi_c must lie in [0, phi_a/2]");
  }
}

}  // namespace detail

/// The geometry-free integral inside the mean aggregate interference:
/// integral over [phi_c, phi_a/2] of
///   tan(phi) * [P_LoS(phi)*E[1/Psi_LoS](phi) + (1-P_LoS(phi))*E[1/Psi_NLoS](phi)].
inline double interference_integral(double phi_c, const EnvironmentParams& env, double phi_a,
                                    const QuadratureSpec& quad) {
  detail::require_cone_domain(phi_c, phi_a, "interference_integral");
  auto integrand = [&](double phi) {
    const double p = los_probability(phi, env);
    return std::tan(phi) * (p * mean_inverse_shadowing(phi, env, true) +
                            (1.0 - p) * mean_inverse_shadowing(phi, env, false));
  };
  return integrate(integrand, phi_c, 0.5 * phi_a, quad);
}

/// Mean aggregate interference [W] seen by the user when the serving drone
/// sits at phi_c: (2*pi*lambda*P_t/K_f) * interference_integral. Altitude
/// cancels out of this expression entirely.
inline double mean_aggregate_interference(double phi_c, const SystemConfig& cfg,
                                          const EnvironmentParams& env,
                                          const QuadratureSpec& quad) {
  validate(cfg);
  return 2.0 * kPi * cfg.lambda * cfg.pt_linear() / cfg.kf() *
         interference_integral(phi_c, env, cfg.phi_a, quad);
}

namespace detail {

/// Largest excess loss [dB] the serving link at phi_c tolerates while
/// keeping SINR above threshold, given the mean interference in watts.
inline double excess_loss_threshold_from_mu_db(double mu_iagg_w, double phi_c,
                                               const SystemConfig& cfg) {
  const double denom = (mu_iagg_w + cfg.n0_linear()) * fspl(phi_c, cfg.h, cfg.f) * cfg.t_linear();
  return linear_to_db(cfg.pt_linear() / denom);
}

}  // namespace detail

/// 10*log10(P_t / ((mu_Iagg(phi_c) + N_0) * L_f(phi_c) * T)): the link at
/// phi_c is covered exactly when its excess loss stays below this value.
inline double excess_loss_threshold_db(double phi_c, const SystemConfig& cfg,
                                       const EnvironmentParams& env, const QuadratureSpec& quad) {
  return detail::excess_loss_threshold_from_mu_db(
      mean_aggregate_interference(phi_c, cfg, env, quad), phi_c, cfg);
}

/// Mean aggregate interference precomputed on a uniform phi_c grid with
/// monotone (shape-preserving) interpolation between the nodes. Valid for
/// any altitude, noise level, and SINR threshold; the fingerprint ties it
/// to the inputs it does depend on (lambda, P_t, f, phi_a, environment,
/// quadrature settings).
class InterferenceProfile {
 public:
  InterferenceProfile() = default;

  double operator()(double phi_c) const { return std::max(0.0, interp_(phi_c)); }

  const std::vector<double>& phi_grid() const { return interp_.nodes_x(); }
  const std::vector<double>& mu_values() const { return interp_.nodes_y(); }
  std::uint64_t cfg_fingerprint() const { return fingerprint_; }
  int grid_size() const { return static_cast<int>(interp_.nodes_x().size()); }

  static std::uint64_t fingerprint_inputs(const SystemConfig& cfg, const EnvironmentParams& env,
                                          const QuadratureSpec& quad, int grid_size) {
    // FNV-1a over the bit patterns of everything the profile depends on.
    // h, N_0 and T are deliberately absent: the profile is reusable across
    // them (interference is altitude-free).
    const double values[] = {cfg.lambda,
                             cfg.pt_db,
                             cfg.f,
                             cfg.phi_a,
                             env.a_los,
                             env.b_los,
                             env.a_nlos,
                             env.b_nlos,
                             env.mu_los_db,
                             env.mu_nlos_db,
                             env.beta1,
                             env.beta2,
                             quad.rel_tol,
                             quad.abs_tol,
                             static_cast<double>(quad.max_subdivisions),
                             quad.inner_tol_ratio,
                             static_cast<double>(grid_size)};
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (double v : values) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, &v, sizeof(bits));
      for (int byte = 0; byte < 8; ++byte) {
        hash ^= (bits >> (8 * byte)) & 0xFFu;
        hash *= 0x00000100000001B3ull;
      }
    }
    return hash;
  }

  friend InterferenceProfile build_interference_profile(const SystemConfig&,
                                                        const EnvironmentParams&,
                                                        const QuadratureSpec&, int);

 private:
  MonotoneCubicInterpolator interp_;
  std::uint64_t fingerprint_ = 0;
};

/// Evaluates mean_aggregate_interference on a uniform grid of `grid_size`
/// points over [0, phi_a/2]. The last node is pinned to exactly zero (the
/// interferer annulus is empty there).
inline InterferenceProfile build_interference_profile(const SystemConfig& cfg,
                                                      const EnvironmentParams& env,
                                                      const QuadratureSpec& quad,
                                                      int grid_size = kDefaultProfileGridSize) {
  validate(cfg);
  validate(env);
  if (grid_size < 16) throw ConfigError("interference profile grid_size must be >= 16");

  const double half = cfg.half_beamwidth();
  std::vector<double> grid(grid_size);
  std::vector<double> mu(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    grid[i] = half * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  grid.back() = half;
  for (int i = 0; i < grid_size; ++i) {
    mu[i] = mean_aggregate_interference(grid[i], cfg, env, quad);
  }
  mu.back() = 0.0;

  InterferenceProfile profile;
  profile.interp_ = MonotoneCubicInterpolator(std::move(grid), std::move(mu));
  profile.fingerprint_ = InterferenceProfile::fingerprint_inputs(cfg, env, quad, grid_size);
  return profile;
}

namespace detail {

/// Coverage probability with the mean interference supplied by `mu_fn`.
template <typename MuFn>
double coverage_probability_impl(const SystemConfig& cfg, const EnvironmentParams& env,
                                 const QuadratureSpec& quad, MuFn&& mu_fn) {
  validate(cfg);
  validate(env);
  auto integrand = [&](double phi_c) {
    const double weight = void_weight(cfg.lambda, cfg.h, phi_c);
    if (weight == 0.0) return 0.0;
    const double psi = excess_loss_threshold_from_mu_db(mu_fn(phi_c), phi_c, cfg);
    const double p = los_probability(phi_c, env);
    const double kernel =
        q_function((env.mu_los_db - psi) / shadow_sigma_db(phi_c, env, true)) * p +
        q_function((env.mu_nlos_db - psi) / shadow_sigma_db(phi_c, env, false)) * (1.0 - p);
    const double cos_phi = std::cos(phi_c);
    return kernel * std::sin(phi_c) / (cos_phi * cos_phi * cos_phi) * weight;
  };
  const double upsilon = integrate(integrand, 0.0, cfg.half_beamwidth(), quad);
  const double p_cov = 2.0 * kPi * cfg.lambda * cfg.h * cfg.h * upsilon;
  // the kernel is <= 1 pointwise, so the non-void probability is an exact
  // bound; clamping only strips quadrature round-off
  return std::clamp(p_cov, 0.0, nonvoid_probability(cfg));
}

}  // namespace detail

/// Coverage probability using a prebuilt interference profile. The profile
/// must have been built for the same (lambda, P_t, f, phi_a, environment,
/// quadrature) inputs; altitude, noise, and threshold may differ.
inline double coverage_probability(const SystemConfig& cfg, const EnvironmentParams& env,
                                   const QuadratureSpec& quad,
                                   const InterferenceProfile& profile) {
  if (profile.cfg_fingerprint() !=
      InterferenceProfile::fingerprint_inputs(cfg, env, quad, profile.grid_size())) {
    throw ConfigError("interference profile was built for a different (config, environment) pair");
  }
  return detail::coverage_probability_impl(cfg, env, quad,
                                           [&](double phi_c) { return profile(phi_c); });
}

/// Coverage probability of the serving link: builds the interference
/// profile internally and integrates the LoS/NLoS Q-function kernel over
/// the closest-drone angle distribution.
inline double coverage_probability(const SystemConfig& cfg, const EnvironmentParams& env,
                                   const QuadratureSpec& quad) {
  if (cfg.lambda == 0.0) return 0.0;
  const InterferenceProfile profile = build_interference_profile(cfg, env, quad);
  return coverage_probability(cfg, env, quad, profile);
}

/// Validation mode: true nested adaptive quadrature, with the inner mean
/// interference integral run at the outer tolerance divided by
/// quad.inner_tol_ratio. Slow; bounds the profile interpolation error.
inline double coverage_probability_exact(const SystemConfig& cfg, const EnvironmentParams& env,
                                         const QuadratureSpec& quad) {
  const QuadratureSpec inner = inner_spec(quad);
  return detail::coverage_probability_impl(cfg, env, quad, [&](double phi_c) {
    return mean_aggregate_interference(phi_c, cfg, env, inner);
  });
}

/// Average LoS probability of the serving drone:
/// 2*pi*lambda*h^2 * integral of sin/cos^3 * exp(-lambda*pi*h^2*tan^2) * P_LoS.
inline double avg_los_closest(const SystemConfig& cfg, const EnvironmentParams& env,
                              const QuadratureSpec& quad) {
  validate(cfg);
  validate(env);
  auto integrand = [&](double phi) {
    const double weight = detail::void_weight(cfg.lambda, cfg.h, phi);
    if (weight == 0.0) return 0.0;
    const double cos_phi = std::cos(phi);
    return std::sin(phi) / (cos_phi * cos_phi * cos_phi) * weight * los_probability(phi, env);
  };
  const double upsilon = integrate(integrand, 0.0, cfg.half_beamwidth(), quad);
  const double result = 2.0 * kPi * cfg.lambda * cfg.h * cfg.h * upsilon;
  return std::clamp(result, 0.0, nonvoid_probability(cfg));
}

}  // namespace dronecov
