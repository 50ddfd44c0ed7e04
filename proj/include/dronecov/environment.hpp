#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dronecov/core.hpp"

namespace dronecov {

/// Frequency- and environment-dependent constants of the air-to-ground
/// channel: shadowing spread sigma_xi(phi) = a_xi * exp(b_xi * phi) [dB],
/// mean excess path loss mu_xi [dB], and the LoS-probability power law
/// P_LoS(phi) = beta1 * (5*pi/12 - phi)^beta2.
struct EnvironmentParams {
  double a_los = 0.0;
  double b_los = 0.0;
  double a_nlos = 0.0;
  double b_nlos = 0.0;
  double mu_los_db = 0.0;
  double mu_nlos_db = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::string name;
};

inline void validate(const EnvironmentParams& env) {
  const std::string where = env.name.empty() ? std::string("environment") : "environment '" + env.name + "'";
  auto fail = [&](const std::string& key, const std::string& why) {
    throw ConfigError(where + ": " + key + " " + why);
  };
  auto finite = [&](double v, const char* key) {
    if (!std::isfinite(v)) fail(key, "must be finite");
  };
  finite(env.a_los, "a_los");
  finite(env.b_los, "b_los");
  finite(env.a_nlos, "a_nlos");
  finite(env.b_nlos, "b_nlos");
  finite(env.mu_los_db, "mu_los_db");
  finite(env.mu_nlos_db, "mu_nlos_db");
  finite(env.beta1, "beta1");
  finite(env.beta2, "beta2");
  if (!(env.a_los > 0.0)) fail("a_los", "must be > 0");
  if (!(env.a_nlos > 0.0)) fail("a_nlos", "must be > 0");
  if (!(env.beta1 > 0.0)) fail("beta1", "must be > 0");
  if (!(env.beta2 >= 0.0)) fail("beta2", "must be >= 0");
  if (env.beta1 * std::pow(kMaxZenithAngle, env.beta2) > 1.0 + 1e-12) {
    fail("beta1", "violates beta1*(5*pi/12)^beta2 <= 1 (P_LoS at phi=0 must be a probability)");
  }
}

/// The parameter sets shipped in data/environments.txt, embedded so the
/// library works without file IO. A test pins the file to these values.
inline const std::vector<EnvironmentParams>& builtin_environments() {
  static const std::vector<EnvironmentParams> sets = {
      {1.2, 1.23, 5.0, 0.67, 0.1, 21.0, 0.9990, 0.0037, "suburban"},
      {2.0, 1.06, 8.0, 0.48, 1.0, 20.0, 0.9440, 0.2105, "urban"},
      {2.5, 0.98, 10.0, 0.45, 1.6, 23.0, 0.8870, 0.4445, "dense-urban"},
      {3.0, 0.92, 12.0, 0.39, 2.3, 34.0, 0.5430, 1.9453, "highrise-urban"},
  };
  return sets;
}

inline const EnvironmentParams& find_environment(const std::vector<EnvironmentParams>& sets,
                                                 std::string_view name) {
  for (const auto& env : sets) {
    if (env.name == name) return env;
  }
  std::string known;
  for (const auto& env : sets) known += (known.empty() ? "" : ", ") + env.name;
  throw ConfigError("unknown environment '" + std::string(name) + "' (known: " + known + ")");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(context + ": cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

// Splits "key = value" (or "key value"); returns false for non-kv lines.
inline bool split_key_value(std::string_view line, std::string& key, std::string& value) {
  const std::size_t eq = line.find('=');
  std::string_view k, v;
  if (eq != std::string_view::npos) {
    k = trim(line.substr(0, eq));
    v = trim(line.substr(eq + 1));
  } else {
    const std::size_t sp = line.find_first_of(" \t");
    if (sp == std::string_view::npos) return false;
    k = trim(line.substr(0, sp));
    v = trim(line.substr(sp + 1));
  }
  if (k.empty() || v.empty()) return false;
  key.assign(k);
  value.assign(v);
  return true;
}

}  // namespace detail

/// Parses the environment parameter file format: `[name]` block headers,
/// one `key = value` pair per line, `#` comments. Each block must define
/// exactly the keys {a_los, b_los, a_nlos, b_nlos, mu_los_db, mu_nlos_db,
/// beta1, beta2}; every parsed set is validated.
inline std::vector<EnvironmentParams> parse_environment_file(std::istream& in) {
  std::vector<EnvironmentParams> sets;
  EnvironmentParams current;
  unsigned seen_mask = 0;
  bool in_block = false;
  int line_no = 0;

  auto finish_block = [&]() {
    if (!in_block) return;
    if (seen_mask != 0xFFu) {
      throw ConfigError("environment '" + current.name + "': missing one of "
                        "{a_los, b_los, a_nlos, b_nlos, mu_los_db, mu_nlos_db, beta1, beta2}");
    }
    validate(current);
    sets.push_back(current);
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line{raw};
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed block header");
      }
      finish_block();
      current = EnvironmentParams{};
      current.name = std::string(detail::trim(line.substr(1, line.size() - 2)));
      seen_mask = 0;
      in_block = true;
      continue;
    }

    std::string key, value;
    if (!detail::split_key_value(line, key, value)) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (key == "version") continue;  // file format version marker
    if (!in_block) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' outside an [environment] block");
    }
    const std::string ctx = "environment '" + current.name + "' line " + std::to_string(line_no);
    const double v = detail::parse_double(value, ctx);
    if (key == "a_los") { current.a_los = v; seen_mask |= 1u << 0; }
    else if (key == "b_los") { current.b_los = v; seen_mask |= 1u << 1; }
    else if (key == "a_nlos") { current.a_nlos = v; seen_mask |= 1u << 2; }
    else if (key == "b_nlos") { current.b_nlos = v; seen_mask |= 1u << 3; }
    else if (key == "mu_los_db") { current.mu_los_db = v; seen_mask |= 1u << 4; }
    else if (key == "mu_nlos_db") { current.mu_nlos_db = v; seen_mask |= 1u << 5; }
    else if (key == "beta1") { current.beta1 = v; seen_mask |= 1u << 6; }
    else if (key == "beta2") { current.beta2 = v; seen_mask |= 1u << 7; }
    else {
      throw ConfigError(ctx + ": unknown key '" + key + "'");
    }
  }
  finish_block();
  if (sets.empty()) throw ConfigError("environment file defines no environments");
  return sets;
}

inline std::vector<EnvironmentParams> load_environment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open environment file '" + path + "'");
  return parse_environment_file(in);
}

}  // namespace dronecov
