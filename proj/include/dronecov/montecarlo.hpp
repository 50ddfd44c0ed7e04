#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dronecov/analysis.hpp"
#include "dronecov/channel.hpp"
#include "dronecov/config.hpp"
#include "dronecov/core.hpp"
#include "dronecov/geometry.hpp"
#include "dronecov/parallel.hpp"
#include "dronecov/random.hpp"

namespace dronecov {

/// How the simulator treats interference when deciding coverage:
/// mean_field plugs in the analytic mean (the quantity the closed form
/// uses), full_stochastic realizes the interferer field per trial.
enum class SimMode { mean_field, full_stochastic };

inline const char* to_string(SimMode mode) {
  return mode == SimMode::mean_field ? "mean_field" : "full_stochastic";
}

inline SimMode parse_sim_mode(const std::string& text) {
  if (text == "mean_field") return SimMode::mean_field;
  if (text == "full_stochastic") return SimMode::full_stochastic;
  throw ConfigError("mode must be 'mean_field' or 'full_stochastic', got '" + text + "'");
}

struct MonteCarloReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::mean_field;
};

namespace detail {

/// Mean and standard error of the mean over per-trial values, reduced in a
/// fixed pairwise order so the result is independent of the worker count.
/// Interference sums are heavy-tailed (log-normal terms), so the sample
/// standard deviation is only an indicative error bar at small trial
/// counts; gates built on it use 1e5+ trials.
inline void mean_and_stderr(const std::vector<double>& values, double& mean, double& se) {
  const std::size_t n = values.size();
  mean = pairwise_sum(values) / static_cast<double>(n);
  if (n < 2) {
    se = 0.0;
    return;
  }
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  se = std::sqrt(var / static_cast<double>(n));
}

inline double binomial_stderr(double p_hat, std::int64_t n) {
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / static_cast<double>(n));
}

/// Sum of received interferer powers for one realized annulus field.
inline double realized_interference(const SystemConfig& cfg, const EnvironmentParams& env,
                                    double phi_c, RandomStream& rng) {
  const double t_lo = std::tan(phi_c);
  const double t_hi = std::tan(cfg.half_beamwidth());
  const double t2_lo = t_lo * t_lo;
  const double t2_hi = t_hi * t_hi;
  const double mean_count = cfg.lambda * kPi * cfg.h * cfg.h * std::max(0.0, t2_hi - t2_lo);
  const double pt = cfg.pt_linear();

  double sum = 0.0;
  const std::uint64_t n = rng.poisson(mean_count);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    const double phi = std::atan(std::sqrt(t2_lo + u * (t2_hi - t2_lo)));
    const LinkState link = sample_link_state(phi, env, rng);
    sum += received_power(pt, phi, cfg.h, cfg.f, link.psi_linear);
  }
  return sum;
}

}  // namespace detail

/// Estimates the mean aggregate interference at a fixed serving angle by
/// realizing the interferer PPP on the annulus [phi_c, phi_a/2] per trial.
/// Trial i draws from substream (seed, i), so the report is bit-identical
/// for any worker count.
inline MonteCarloReport simulate_mean_interference(const SystemConfig& cfg,
                                                   const EnvironmentParams& env, double phi_c,
                                                   std::int64_t trials, std::uint64_t seed,
                                                   unsigned workers = 0) {
  validate(cfg);
  validate(env);
  if (trials < 100) throw ConfigError("simulate_mean_interference needs trials >= 100");
  if (!(phi_c >= 0.0 && phi_c <= cfg.half_beamwidth())) {
    throw ConfigError("simulate_mean_interference: phi_c must lie in [0, phi_a/2]");
  }

  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  parallel_for_index(
      per_trial.size(),
      [&](std::size_t i) {
        RandomStream rng(seed, i);
        per_trial[i] = detail::realized_interference(cfg, env, phi_c, rng);
      },
      workers);

  MonteCarloReport report;
  report.trials = trials;
  report.seed = seed;
  report.mode = SimMode::full_stochastic;
  detail::mean_and_stderr(per_trial, report.estimate, report.std_error);
  return report;
}

/// Estimates P[SINR > T] by sampling the serving drone's angle (void
/// realizations count as not covered), its LoS state and excess loss, and
/// the interference per `mode`. Reports the covered fraction with its
/// binomial standard error.
inline MonteCarloReport simulate_coverage(const SystemConfig& cfg, const EnvironmentParams& env,
                                          std::int64_t trials, std::uint64_t seed, SimMode mode,
                                          unsigned workers = 0) {
  validate(cfg);
  validate(env);
  if (trials < 1000) throw ConfigError("simulate_coverage needs trials >= 1000");

  InterferenceProfile profile;
  if (mode == SimMode::mean_field && cfg.lambda > 0.0) {
    profile = build_interference_profile(cfg, env, QuadratureSpec{});
  }
  const double pt = cfg.pt_linear();
  const double n0 = cfg.n0_linear();
  const double t_lin = cfg.t_linear();

  std::vector<std::uint8_t> covered(static_cast<std::size_t>(trials));
  parallel_for_index(
      covered.size(),
      [&](std::size_t i) {
        RandomStream rng(seed, i);
        const auto phi_c = sample_closest_angle(cfg, rng);
        if (!phi_c) {
          covered[i] = 0;
          return;
        }
        const LinkState link = sample_link_state(*phi_c, env, rng);
        const double interference = (mode == SimMode::mean_field)
                                        ? profile(*phi_c)
                                        : detail::realized_interference(cfg, env, *phi_c, rng);
        const double sinr =
            pt / ((interference + n0) * fspl(*phi_c, cfg.h, cfg.f) * link.psi_linear);
        covered[i] = sinr > t_lin ? 1 : 0;
      },
      workers);

  const auto count =
      std::accumulate(covered.begin(), covered.end(), std::int64_t{0},
                      [](std::int64_t acc, std::uint8_t c) { return acc + c; });
  MonteCarloReport report;
  report.trials = trials;
  report.seed = seed;
  report.mode = mode;
  report.estimate = static_cast<double>(count) / static_cast<double>(trials);
  report.std_error = detail::binomial_stderr(report.estimate, trials);
  return report;
}

/// Estimates the average LoS probability of the serving drone (void
/// realizations count as 0).
inline MonteCarloReport simulate_avg_los_closest(const SystemConfig& cfg,
                                                 const EnvironmentParams& env,
                                                 std::int64_t trials, std::uint64_t seed,
                                                 unsigned workers = 0) {
  validate(cfg);
  validate(env);
  if (trials < 1000) throw ConfigError("simulate_avg_los_closest needs trials >= 1000");

  std::vector<std::uint8_t> los(static_cast<std::size_t>(trials));
  parallel_for_index(
      los.size(),
      [&](std::size_t i) {
        RandomStream rng(seed, i);
        const auto phi_c = sample_closest_angle(cfg, rng);
        los[i] = (phi_c && rng.bernoulli(los_probability(*phi_c, env))) ? 1 : 0;
      },
      workers);

  const auto count = std::accumulate(los.begin(), los.end(), std::int64_t{0},
                                     [](std::int64_t acc, std::uint8_t c) { return acc + c; });
  MonteCarloReport report;
  report.trials = trials;
  report.seed = seed;
  report.mode = SimMode::full_stochastic;
  report.estimate = static_cast<double>(count) / static_cast<double>(trials);
  report.std_error = detail::binomial_stderr(report.estimate, trials);
  return report;
}

}  // namespace dronecov
