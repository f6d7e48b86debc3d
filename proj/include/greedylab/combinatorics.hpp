#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace greedylab {

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = r * num / i;  // exact: r * num is divisible by i at every step
  }
  return r;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return (b > std::numeric_limits<std::uint64_t>::max() - a)
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

/// Calls fn(positions) for every k-subset of {0, ..., n-1}, in lexicographic
/// order. `positions` is ascending.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> pos(k);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  while (true) {
    fn(std::span<const std::size_t>(pos));
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

/// Calls fn(mask) for every subset of {0, ..., n-1} encoded as a bitmask, in
/// increasing mask order. n must be < 64.
template <typename Fn>
void for_each_subset_mask(std::size_t n, Fn&& fn) {
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < end; ++mask) fn(mask);
}

}  // namespace greedylab
