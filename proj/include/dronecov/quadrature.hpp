#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "dronecov/core.hpp"

namespace dronecov {

/// Tolerances and budgets for the adaptive integrals. For a nested pair the
/// inner integral runs at the outer tolerances divided by inner_tol_ratio.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  double inner_tol_ratio = 10.0;
};

inline void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0)) throw ConfigError("rel_tol must be > 0");
  if (!(spec.abs_tol >= 0.0)) throw ConfigError("abs_tol must be >= 0");
  if (spec.max_subdivisions < 1) throw ConfigError("max_subdivisions must be >= 1");
  if (!(spec.inner_tol_ratio >= 1.0)) throw ConfigError("inner_tol_ratio must be >= 1");
}

/// Tolerances for the inner integral of a nested pair.
inline QuadratureSpec inner_spec(const QuadratureSpec& outer) {
  QuadratureSpec inner = outer;
  inner.rel_tol = outer.rel_tol / outer.inner_tol_ratio;
  inner.abs_tol = outer.abs_tol / outer.inner_tol_ratio;
  return inner;
}

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kGauss7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double integral;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  double fv_low[7];
  double fv_high[7];
  const double f_center = f(center);
  double kronrod = f_center * kGK15Weights[7];
  double gauss = f_center * kGauss7Weights[3];

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kGK15Nodes[j];
    fv_low[j] = f(center - dx);
    fv_high[j] = f(center + dx);
    kronrod += kGK15Weights[j] * (fv_low[j] + fv_high[j]);
    if (j % 2 == 1) gauss += kGauss7Weights[j / 2] * (fv_low[j] + fv_high[j]);
  }

  // QUADPACK dqk15 error estimate: |K - G| rescaled against the integral
  // of |f - mean(f)| over the interval.
  const double mean = kronrod * 0.5;
  double resasc = kGK15Weights[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kGK15Weights[j] * (std::abs(fv_low[j] - mean) + std::abs(fv_high[j] - mean));
  }
  resasc *= abs_half;

  double err = std::abs(kronrod - gauss) * abs_half;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return Segment{a, b, kronrod * half, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7-15 quadrature with worst-interval-first
/// bisection. Throws ToleranceError (carrying the best estimate and the
/// achieved error bound) when the subdivision budget runs out before
/// max(abs_tol, rel_tol*|I|) is met.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  validate(spec);
  if (a == b) return 0.0;

  std::priority_queue<detail::Segment> queue;
  detail::Segment first = detail::gk15(f, a, b);
  double total = first.integral;
  double total_err = first.error;
  queue.push(first);

  for (int split = 0; split < spec.max_subdivisions; ++split) {
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
      return total;
    }
    if (queue.empty()) break;
    const detail::Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval too narrow to bisect; its error estimate stays in the
      // total, so an unreachable tolerance still surfaces as ToleranceError
      continue;
    }
    const detail::Segment left = detail::gk15(f, worst.a, mid);
    const detail::Segment right = detail::gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    return total;
  }
  throw ToleranceError(
      "adaptive quadrature did not converge: error estimate " + std::to_string(total_err) +
          " exceeds tolerance after " + std::to_string(spec.max_subdivisions) + " subdivisions",
      total, total_err);
}

}  // namespace dronecov
