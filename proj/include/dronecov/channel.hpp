#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dronecov/core.hpp"
#include "dronecov/environment.hpp"
#include "dronecov/random.hpp"

namespace dronecov {

/// One realized propagation state of a link: LoS/NLoS plus the linear-scale
/// excess loss factor Psi (> 0) drawn from the corresponding log-normal.
struct LinkState {
  bool is_los = true;
  double psi_linear = 1.0;
};

namespace detail {

inline void require_zenith_domain(double phi, const char* where) {
  if (!(phi >= 0.0 && phi <= kMaxZenithAngle)) {
    throw std::domain_error(std::string(where) + ": zenith angle " + std::to_string(phi) +
                            " outside [0, 5*pi/12]");
  }
}

}  // namespace detail

/// Free-space path loss as a linear factor: (4*pi*f*d/c)^2 with link length
/// d = h/cos(phi). Strictly increasing in both phi and h.
inline double fspl(double phi, double h, double f) {
  if (!(phi >= 0.0 && phi < kPi / 2)) {
    throw std::domain_error("fspl: phi must lie in [0, pi/2); the link length diverges at pi/2");
  }
  if (!(h > 0.0)) throw std::domain_error("fspl: altitude must be > 0");
  if (!(f > 0.0)) throw std::domain_error("fspl: frequency must be > 0");
  const double kf = 4.0 * kPi * f / kSpeedOfLight;
  const double cos_phi = std::cos(phi);
  return kf * kf * h * h / (cos_phi * cos_phi);
}

/// Shadowing spread sigma_xi(phi) = a_xi * exp(b_xi * phi) [dB].
inline double shadow_sigma_db(double phi, const EnvironmentParams& env, bool is_los) {
  detail::require_zenith_domain(phi, "shadow_sigma_db");
  return is_los ? env.a_los * std::exp(env.b_los * phi)
                : env.a_nlos * std::exp(env.b_nlos * phi);
}

/// LoS probability beta1 * (5*pi/12 - phi)^beta2, clamped to [0, 1] to
/// guard user parameter sets that spill above 1 near phi = 0.
inline double los_probability(double phi, const EnvironmentParams& env) {
  detail::require_zenith_domain(phi, "los_probability");
  const double base = kMaxZenithAngle - phi;
  const double p = env.beta1 * std::pow(base, env.beta2);
  return std::clamp(p, 0.0, 1.0);
}

/// E[1/Psi_xi] of the log-normal excess loss:
/// 10^((-mu_xi + v*sigma_xi(phi)^2/2)/10) with v = ln(10)/10.
inline double mean_inverse_shadowing(double phi, const EnvironmentParams& env, bool is_los) {
  detail::require_zenith_domain(phi, "mean_inverse_shadowing");
  const double v = std::log(10.0) / 10.0;
  const double mu = is_los ? env.mu_los_db : env.mu_nlos_db;
  const double sigma = shadow_sigma_db(phi, env, is_los);
  return std::pow(10.0, (-mu + v * sigma * sigma / 2.0) / 10.0);
}

/// Draws the LoS/NLoS state and the excess loss: is_los ~
/// Bernoulli(P_LoS(phi)), 10*log10(psi) ~ Normal(mu_xi, sigma_xi(phi)^2).
inline LinkState sample_link_state(double phi, const EnvironmentParams& env, RandomStream& rng) {
  detail::require_zenith_domain(phi, "sample_link_state");
  LinkState state;
  state.is_los = rng.bernoulli(los_probability(phi, env));
  const double mu = state.is_los ? env.mu_los_db : env.mu_nlos_db;
  const double sigma = shadow_sigma_db(phi, env, state.is_los);
  state.psi_linear = db_to_linear(rng.normal(mu, sigma));
  return state;
}

/// Received power pt / (L_f(phi, h, f) * psi) [W].
inline double received_power(double pt_linear, double phi, double h, double f,
                             double psi_linear) {
  if (!(pt_linear > 0.0)) throw std::domain_error("received_power: pt must be > 0");
  if (!(psi_linear > 0.0)) throw std::domain_error("received_power: psi must be > 0");
  return pt_linear / (fspl(phi, h, f) * psi_linear);
}

}  // namespace dronecov
