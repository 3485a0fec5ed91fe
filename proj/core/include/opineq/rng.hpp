#pragma once

#include <cstdint>
#include <random>

#include "opineq/linalg.hpp"

namespace opineq {

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based derivation: the stream for trial `index` depends only on
/// (seed, stream, index), so trials can run in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return normal_(engine_); }
  /// Standard complex Gaussian, E|z|^2 = 1.
  cplx complex_normal();
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  bool coin(double p = 0.5) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace opineq
