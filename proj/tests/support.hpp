#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "greedylab/space.hpp"

namespace greedylab::testing {

/// Seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t k) { return rng_() % k; }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  /// Vector on [1..dim] with support size in [1, max_support]; values from a
  /// small grid with probability 1/2 (to exercise ties), else uniform.
  CoeffVector vector(Index dim, std::size_t max_support) {
    static constexpr double grid[] = {1.0, -1.0, 0.5, -0.5, 2.0, -2.0};
    std::vector<Index> pool(dim);
    for (Index i = 0; i < dim; ++i) pool[i] = i + 1;
    const std::size_t k = 1 + below(std::min<std::size_t>(max_support, dim));
    std::vector<Entry> entries;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t pick = j + below(pool.size() - j);
      std::swap(pool[j], pool[pick]);
      double v = below(2) == 0 ? grid[below(6)] : uniform(-3.0, 3.0);
      if (v == 0.0) v = 1.0;
      entries.push_back({pool[j], v});
    }
    return CoeffVector::sparse(std::move(entries));
  }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<SpaceSpec> sample_spaces(Index dim) {
  std::vector<double> w(dim);
  for (Index i = 0; i < dim; ++i) w[i] = 1.0 / (1.0 + i);
  return {SpaceSpec::lp(1),          SpaceSpec::lp(1.5),
          SpaceSpec::lp(2),          SpaceSpec::lp(3),
          SpaceSpec::lp(INFINITY),   SpaceSpec::weighted_lp(1, w),
          SpaceSpec::weighted_lp(2, w), SpaceSpec::hilbert(),
          SpaceSpec::summing_c0()};
}

}  // namespace greedylab::testing
