#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dronecov/core.hpp"

namespace dronecov {

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Deterministic, splittable random source. Substream `stream` of a given
/// seed is an independent generator: trial i of a simulation uses
/// RandomStream(seed, i), so results do not depend on how trials are
/// partitioned across workers. The core generator is xoshiro256++ with
/// splitmix64 state initialization; all distributions are sampled by
/// algorithms pinned in this header, never by std:: distributions (whose
/// algorithms are implementation-defined), so identical (seed, stream)
/// pairs reproduce bit-identical sequences everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t sm = seed;
    detail::splitmix64_next(sm);
    sm ^= 0xD1B54A32D192ED03ull * (stream + 1);
    for (auto& word : state_) word = detail::splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Box-Muller, cosine branch only (no cached second deviate, so the draw
  /// count per call is fixed).
  double normal(double mean, double stddev) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double exponential() { return -std::log(uniform01()); }

  /// Poisson count by summing exponential inter-arrival times. Exact for
  /// every mean; cost is O(mean) draws, which is fine for the planar
  /// densities this library deals in.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::uint64_t n = 0;
    double acc = exponential();
    while (acc <= mean) {
      ++n;
      acc += exponential();
    }
    return n;
  }

 private:
  std::uint64_t state_[4];
};

/// Sum in a fixed pairwise order. Used for Monte Carlo reductions so the
/// result does not depend on how trials were partitioned across workers.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values.data(), values.size());
}

}  // namespace dronecov
