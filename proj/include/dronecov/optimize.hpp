#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dronecov/analysis.hpp"
#include "dronecov/config.hpp"
#include "dronecov/core.hpp"
#include "dronecov/parallel.hpp"

namespace dronecov {

enum class SweepParameter { altitude, density, beamwidth };

inline const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::altitude: return "altitude";
    case SweepParameter::density: return "density";
    default: return "beamwidth";
  }
}

inline SweepParameter parse_sweep_parameter(const std::string& text) {
  if (text == "altitude") return SweepParameter::altitude;
  if (text == "density") return SweepParameter::density;
  if (text == "beamwidth") return SweepParameter::beamwidth;
  throw ConfigError("param must be one of altitude, density, beamwidth; got '" + text + "'");
}

/// base_cfg with the swept parameter replaced (beamwidth values are
/// radians here; the CLI converts from degrees at its boundary).
inline SystemConfig with_parameter(const SystemConfig& base, SweepParameter param, double value) {
  SystemConfig cfg = base;
  switch (param) {
    case SweepParameter::altitude: cfg.h = value; break;
    case SweepParameter::density: cfg.lambda = value; break;
    case SweepParameter::beamwidth: cfg.phi_a = value; break;
  }
  return cfg;
}

struct SweepSpec {
  SweepParameter parameter = SweepParameter::altitude;
  std::vector<double> grid;
  SystemConfig base_cfg;
  EnvironmentParams env;
  QuadratureSpec quad;
};

inline void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw ConfigError("sweep grid must be nonempty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw ConfigError("sweep grid must be strictly increasing");
    }
  }
  validate(spec.quad);
  validate(spec.env);
  for (double value : spec.grid) {
    validate(with_parameter(spec.base_cfg, spec.parameter, value));
  }
}

struct SweepRow {
  double param_value = 0.0;
  double p_cov = 0.0;
  double p_los_closest = 0.0;
  double mu_iagg_at_zero = 0.0;  // W
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t argmax_index = 0;
  double argmax_value = 0.0;
  double argmax_p_cov = 0.0;
};

/// Evaluates coverage, serving-drone LoS probability, and mu_Iagg(0) at
/// every grid point. Altitude sweeps reuse one interference profile for
/// the whole grid (the interference is altitude-free); density and
/// beamwidth sweeps rebuild it per point. Rows keep grid order; quadrature
/// failures are rethrown annotated with the failing grid point.
inline SweepResult sweep(const SweepSpec& spec) {
  validate(spec);
  const std::size_t n = spec.grid.size();

  SweepResult result;
  result.rows.assign(n, SweepRow{});

  const bool shared_profile = spec.parameter == SweepParameter::altitude;
  InterferenceProfile profile;
  if (shared_profile && spec.base_cfg.lambda > 0.0) {
    profile = build_interference_profile(spec.base_cfg, spec.env, spec.quad);
  }

  parallel_for_index(n, [&](std::size_t i) {
    const double value = spec.grid[i];
    const SystemConfig cfg = with_parameter(spec.base_cfg, spec.parameter, value);
    try {
      SweepRow row;
      row.param_value = value;
      if (cfg.lambda == 0.0) {
        row.p_cov = 0.0;
        row.p_los_closest = 0.0;
        row.mu_iagg_at_zero = 0.0;
      } else if (shared_profile) {
        row.p_cov = coverage_probability(cfg, spec.env, spec.quad, profile);
        row.mu_iagg_at_zero = profile.mu_values().front();
      } else {
        const InterferenceProfile point_profile =
            build_interference_profile(cfg, spec.env, spec.quad);
        row.p_cov = coverage_probability(cfg, spec.env, spec.quad, point_profile);
        row.mu_iagg_at_zero = point_profile.mu_values().front();
      }
      if (cfg.lambda > 0.0) {
        row.p_los_closest = avg_los_closest(cfg, spec.env, spec.quad);
      }
      result.rows[i] = row;
    } catch (const ToleranceError& err) {
      throw ToleranceError(std::string(err.what()) + " at grid point " +
                               to_string(spec.parameter) + "=" + std::to_string(value),
                           err.estimate(), err.error_estimate());
    }
  });

  result.argmax_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    // strict > keeps ties on the smaller parameter value
    if (result.rows[i].p_cov > result.rows[result.argmax_index].p_cov) result.argmax_index = i;
  }
  result.argmax_value = result.rows[result.argmax_index].param_value;
  result.argmax_p_cov = result.rows[result.argmax_index].p_cov;
  return result;
}

/// Golden-section maximization of a unimodal objective on [lo, hi] to a
/// parameter-relative interval tolerance. Returns (x, f(x)) at the better
/// of the two final interior points.
template <typename F>
std::pair<double, double> golden_section_maximize(F&& f, double lo, double hi,
                                                  double rel_tol = 1e-3, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < max_iter && (b - a) > rel_tol * 0.5 * (std::abs(a) + std::abs(b));
       ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

struct RefinedOptimum {
  double param_value = 0.0;
  double p_cov = 0.0;
};

/// Golden-section refinement of the sweep argmax inside [lo, hi]. The
/// bracket midpoint must beat both endpoints (three-point unimodality
/// probe); otherwise BracketError, and the caller falls back to the grid
/// argmax.
inline RefinedOptimum refine_argmax(const SweepSpec& spec, double lo, double hi) {
  validate(spec);
  if (!(lo >= spec.grid.front() && hi <= spec.grid.back() && lo < hi)) {
    throw ConfigError("refine_argmax bracket must lie inside the sweep grid range");
  }

  const bool shared_profile = spec.parameter == SweepParameter::altitude;
  InterferenceProfile profile;
  if (shared_profile && spec.base_cfg.lambda > 0.0) {
    profile = build_interference_profile(spec.base_cfg, spec.env, spec.quad);
  }
  auto objective = [&](double value) {
    const SystemConfig cfg = with_parameter(spec.base_cfg, spec.parameter, value);
    if (cfg.lambda == 0.0) return 0.0;
    if (shared_profile) return coverage_probability(cfg, spec.env, spec.quad, profile);
    const InterferenceProfile point_profile = build_interference_profile(cfg, spec.env, spec.quad);
    return coverage_probability(cfg, spec.env, spec.quad, point_profile);
  };

  const double mid = 0.5 * (lo + hi);
  const double f_lo = objective(lo);
  const double f_mid = objective(mid);
  const double f_hi = objective(hi);
  if (!(f_mid > f_lo && f_mid > f_hi)) {
    throw BracketError("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] failed the unimodality probe (midpoint does not beat both endpoints)");
  }

  const auto [x, fx] = golden_section_maximize(objective, lo, hi, 1e-3);
  RefinedOptimum best{x, fx};
  if (f_mid > best.p_cov) best = {mid, f_mid};
  return best;
}

}  // namespace dronecov
