#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dronecov/config.hpp"
#include "dronecov/core.hpp"
#include "dronecov/random.hpp"

namespace dronecov {

/// One realization of the drone field above the user, reduced to zenith
/// angles (every quantity in the model depends on geometry only through
/// phi). Angles are sorted ascending; angles.front() is the serving drone.
struct FieldRealization {
  std::vector<double> angles;

  std::size_t count() const { return angles.size(); }
};

namespace detail {

inline void require_closest_domain(double phi_c, double lambda, double h, const char* where) {
  require_zenith_domain(phi_c, where);
  if (!(lambda >= 0.0)) throw std::domain_error(std::string(where) + ": lambda must be >= 0");
  if (!(h > 0.0)) throw std::domain_error(std::string(where) + ": altitude must be > 0");
}

}  // namespace detail

/// CDF of the closest drone's zenith angle: 1 - exp(-lambda*pi*h^2*tan^2(phi_c)),
/// the PPP void probability of the ground disk of radius h*tan(phi_c).
inline double closest_angle_cdf(double phi_c, double lambda, double h) {
  detail::require_closest_domain(phi_c, lambda, h, "closest_angle_cdf");
  const double t = std::tan(phi_c);
  return -std::expm1(-lambda * kPi * h * h * t * t);
}

/// Density of the closest drone's zenith angle:
/// 2*pi*lambda*h^2 * sin(phi)/cos^3(phi) * exp(-lambda*pi*h^2*tan^2(phi)).
inline double closest_angle_pdf(double phi_c, double lambda, double h) {
  detail::require_closest_domain(phi_c, lambda, h, "closest_angle_pdf");
  const double t = std::tan(phi_c);
  const double cos_phi = std::cos(phi_c);
  const double weight = std::exp(-lambda * kPi * h * h * t * t);
  return 2.0 * kPi * lambda * h * h * std::sin(phi_c) / (cos_phi * cos_phi * cos_phi) * weight;
}

/// Probability that at least one drone lies inside the service region A —
/// the hard ceiling for every coverage-style metric.
inline double nonvoid_probability(const SystemConfig& cfg) {
  return closest_angle_cdf(cfg.half_beamwidth(), cfg.lambda, cfg.h);
}

/// Draws the serving drone's zenith angle, or nothing when region A is
/// empty (probability exp(-lambda*pi*h^2*tan^2(phi_a/2))). Non-void draws
/// invert the CDF restricted to [0, phi_a/2].
inline std::optional<double> sample_closest_angle(const SystemConfig& cfg, RandomStream& rng) {
  validate(cfg);
  const double f_max = nonvoid_probability(cfg);
  if (!rng.bernoulli(f_max)) return std::nullopt;
  const double u = rng.uniform01();
  const double area_rate = cfg.lambda * kPi * cfg.h * cfg.h;
  double phi_c = std::atan(std::sqrt(-std::log1p(-u * f_max) / area_rate));
  return std::min(phi_c, cfg.half_beamwidth());
}

/// Zenith-angle density of one interferer given the serving drone at
/// phi_c: the interferers form a PPP on the ground annulus between
/// h*tan(phi_c) and h*tan(phi_a/2), so the angle density is
/// 2*pi*h^2/|A_c| * sin(phi)/cos^3(phi).
inline double interferer_angle_pdf(double phi, double phi_c, const SystemConfig& cfg) {
  validate(cfg);
  const double half = cfg.half_beamwidth();
  if (!(phi_c >= 0.0 && phi_c < half)) {
    throw std::domain_error("interferer_angle_pdf: phi_c must lie in [0, phi_a/2) (empty annulus otherwise)");
  }
  if (!(phi >= phi_c && phi <= half)) {
    throw std::domain_error("interferer_angle_pdf: phi must lie in [phi_c, phi_a/2]");
  }
  const double t_lo = std::tan(phi_c);
  const double t_hi = std::tan(half);
  const double cos_phi = std::cos(phi);
  return 2.0 * std::sin(phi) / (cos_phi * cos_phi * cos_phi) / (t_hi * t_hi - t_lo * t_lo);
}

namespace detail {

// PPP on the ground annulus between radii h*tan(phi_lo) and h*tan(phi_hi),
// reduced to sorted zenith angles.
inline FieldRealization sample_annulus(const SystemConfig& cfg, double phi_lo, double phi_hi,
                                       RandomStream& rng) {
  const double t_lo = std::tan(phi_lo);
  const double t_hi = std::tan(phi_hi);
  const double t2_lo = t_lo * t_lo;
  const double t2_hi = t_hi * t_hi;
  const double mean = cfg.lambda * kPi * cfg.h * cfg.h * std::max(0.0, t2_hi - t2_lo);

  FieldRealization field;
  const std::uint64_t n = rng.poisson(mean);
  field.angles.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    // uniform over the annulus area: r^2 uniform on [r_lo^2, r_hi^2]
    field.angles.push_back(std::atan(std::sqrt(t2_lo + u * (t2_hi - t2_lo))));
  }
  std::sort(field.angles.begin(), field.angles.end());
  return field;
}

}  // namespace detail

/// One PPP realization of the full service region A: Poisson count with
/// mean lambda*pi*h^2*tan^2(phi_a/2), positions uniform on the ground
/// disk, reduced to sorted zenith angles.
inline FieldRealization sample_field(const SystemConfig& cfg, RandomStream& rng) {
  validate(cfg);
  return detail::sample_annulus(cfg, 0.0, cfg.half_beamwidth(), rng);
}

/// PPP realization of the interferer annulus [phi_c, phi_a/2] only.
inline FieldRealization sample_field_annulus(const SystemConfig& cfg, double phi_c,
                                             RandomStream& rng) {
  validate(cfg);
  if (!(phi_c >= 0.0 && phi_c <= cfg.half_beamwidth())) {
    throw std::domain_error("sample_field_annulus: phi_c must lie in [0, phi_a/2]");
  }
  return detail::sample_annulus(cfg, phi_c, cfg.half_beamwidth(), rng);
}

}  // namespace dronecov
