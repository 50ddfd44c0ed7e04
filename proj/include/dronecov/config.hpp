#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string>

#include "dronecov/core.hpp"
#include "dronecov/environment.hpp"
#include "dronecov/quadrature.hpp"

namespace dronecov {

/// Downlink system parameters. All absolute powers are dBW (only ratios
/// enter the SINR, but the codebase sticks to one reference everywhere).
/// Angles are radians internally; config files carry phi_a in degrees.
struct SystemConfig {
  double pt_db = -6.0;     // transmit power [dBW]
  double n0_db = -150.0;   // noise power [dBW]
  double lambda = 5e-6;    // drone density [1/m^2]
  double h = 500.0;        // drone altitude [m]
  double phi_a = kPi / 2;  // full antenna beamwidth [rad]
  double t_db = -5.0;      // SINR threshold [dB]
  double f = 2e9;          // carrier frequency [Hz]

  double pt_linear() const { return db_to_linear(pt_db); }
  double n0_linear() const { return db_to_linear(n0_db); }
  double t_linear() const { return db_to_linear(t_db); }
  double half_beamwidth() const { return 0.5 * phi_a; }
  /// K_f = (4*pi*f/c)^2, the frequency part of the free-space path loss.
  double kf() const {
    const double k = 4.0 * kPi * f / kSpeedOfLight;
    return k * k;
  }
};

inline void validate(const SystemConfig& cfg) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config: " + key + " " + why);
  };
  if (!std::isfinite(cfg.pt_db)) fail("pt_db", "must be finite");
  if (!std::isfinite(cfg.n0_db)) fail("n0_db", "must be finite");
  if (!std::isfinite(cfg.t_db)) fail("t_db", "must be finite");
  if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) fail("lambda", "must be >= 0 and finite");
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) fail("h", "must be > 0 and finite");
  if (!(cfg.f > 0.0) || !std::isfinite(cfg.f)) fail("f", "must be > 0 and finite");
  if (!(cfg.phi_a > 0.0) || !(0.5 * cfg.phi_a <= kMaxZenithAngle)) {
    fail("phi_a", "must satisfy 0 < phi_a/2 <= 5*pi/12 (beamwidth ceiling 150 degrees)");
  }
}

/// A parsed run configuration file: system + quadrature parameters and an
/// optional environment name.
struct ConfigFile {
  SystemConfig cfg;
  QuadratureSpec quad;
  std::optional<std::string> env_name;
};

/// Parses the plain-text run configuration format: one `key = value` per
/// line, `#` comments. Keys match the SystemConfig/QuadratureSpec field
/// names; `phi_a` is in degrees at this boundary; `env` selects an
/// environment by name. Unknown keys are errors. Validation of the
/// resulting config is the caller's job (CLI flags may still override).
inline ConfigFile parse_config_file(std::istream& in) {
  ConfigFile out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line{raw};
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    std::string key, value;
    if (!detail::split_key_value(line, key, value)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (key == "env") {
      out.env_name = value;
      continue;
    }
    const std::string ctx = "config line " + std::to_string(line_no) + " (" + key + ")";
    const double v = detail::parse_double(value, ctx);
    if (key == "pt_db") out.cfg.pt_db = v;
    else if (key == "n0_db") out.cfg.n0_db = v;
    else if (key == "lambda") out.cfg.lambda = v;
    else if (key == "h") out.cfg.h = v;
    else if (key == "phi_a") out.cfg.phi_a = deg_to_rad(v);
    else if (key == "t_db") out.cfg.t_db = v;
    else if (key == "f") out.cfg.f = v;
    else if (key == "rel_tol") out.quad.rel_tol = v;
    else if (key == "abs_tol") out.quad.abs_tol = v;
    else if (key == "max_subdivisions") out.quad.max_subdivisions = static_cast<int>(v);
    else if (key == "inner_tol_ratio") out.quad.inner_tol_ratio = v;
    else throw ConfigError(ctx + ": unknown key");
  }
  return out;
}

inline ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config_file(in);
}

}  // namespace dronecov
