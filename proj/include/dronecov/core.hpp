#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dronecov {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Largest zenith angle (angle from the vertical through the user) the
/// LoS-probability model is defined for: 5*pi/12, i.e. 75 degrees. The
/// model's power-law base goes negative beyond it, so every angular domain
/// in the library is clamped here and the full beamwidth is capped at
/// 2 * kMaxZenithAngle = 150 degrees.
inline constexpr double kMaxZenithAngle = 5.0 * kPi / 12.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Invalid configuration, parameter set, or input file. The message names
/// the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its subdivision budget before reaching the
/// requested tolerance. Carries the best estimate and the achieved error
/// bound so callers can decide whether to accept the result anyway.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const { return estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// The bracket handed to refine_argmax failed its unimodality probe.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dronecov
