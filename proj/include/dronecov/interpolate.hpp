#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "dronecov/core.hpp"

namespace dronecov {

/// Fritsch-Carlson monotone cubic interpolation. Where the data are
/// monotone the interpolant is monotone too, so it never overshoots
/// between nodes. Queries outside the node range clamp to the end values.
class MonotoneCubicInterpolator {
 public:
  MonotoneCubicInterpolator() = default;

  MonotoneCubicInterpolator(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2) {
      throw ConfigError("interpolator needs at least two nodes with matching x/y sizes");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
      if (!(x_[i] > x_[i - 1])) throw ConfigError("interpolator nodes must be strictly increasing");
    }
    build_slopes();
  }

  double operator()(double xq) const {
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    const std::size_t hi =
        static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin());
    const std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double t = (xq - x_[lo]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[hi] + h11 * h * m_[hi];
  }

  const std::vector<double>& nodes_x() const { return x_; }
  const std::vector<double>& nodes_y() const { return y_; }

 private:
  void build_slopes() {
    const std::size_t n = x_.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }
    m_.assign(n, 0.0);
    m_.front() = secant.front();
    m_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (secant[i - 1] * secant[i] <= 0.0) {
        m_[i] = 0.0;
      } else {
        m_[i] = 0.5 * (secant[i - 1] + secant[i]);
      }
    }
    // limiter pass: keep alpha^2 + beta^2 <= 9 on every interval
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (secant[i] == 0.0) {
        m_[i] = 0.0;
        m_[i + 1] = 0.0;
        continue;
      }
      const double alpha = m_[i] / secant[i];
      const double beta = m_[i + 1] / secant[i];
      const double norm2 = alpha * alpha + beta * beta;
      if (norm2 > 9.0) {
        const double tau = 3.0 / std::sqrt(norm2);
        m_[i] = tau * alpha * secant[i];
        m_[i + 1] = tau * beta * secant[i];
      }
    }
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace dronecov
