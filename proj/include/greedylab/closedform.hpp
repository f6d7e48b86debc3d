#pragma once

#include <cstddef>

namespace greedylab {

/// ||1_B|| in l^p with |B| = N, approximated from the lines [1_A], |A| = m.
struct LpIndicatorCase {
  double p = 2.0;  // 1 < p < inf
  std::size_t n = 1;  // |B|
  std::size_t m = 1;

  /// Throws DomainError unless p > 1 (finite) and n, m >= 1.
  static LpIndicatorCase make(double p, std::size_t n, std::size_t m);
};

/// min over alpha and 1 <= k <= N of
///   H(alpha, k) = |1 - alpha|^p k + |alpha|^p (m - k) + (N - k)
/// in closed form: N (1 + ((m - N)/N)^{-1/(p-1)})^{-(p-1)}, and 0 at m = N.
/// Requires p > 1 and m >= N >= 1 (DomainError otherwise).
double lemma_min(double p, std::size_t m, std::size_t n);

struct LemmaBruteForce {
  double h_min = 0.0;  // min of H over alpha and k in {0..N}
  double l_min = 0.0;  // min of the sign-split L over alpha and k1 + k2 <= N
  double value = 0.0;  // min(h_min, l_min)
  double h_alpha = 0.0;
  std::size_t h_k = 0;
};

/// Reference minimization of H and L: for each k (or (k1, k2)) a coarse scan
/// of `grid` points on [-2, 2] seeds a ternary search in alpha.
LemmaBruteForce lemma_min_bruteforce(double p, std::size_t m, std::size_t n,
                                     std::size_t grid = 64);

/// D_m(1_B) = D*_m(1_B) in l^p:
///   (N - m)^{1/p}                                   for m <= N,
///   N^{1/p} (1 + (m/N - 1)^{-1/(p-1)})^{-1/p'}      for m >= N, p' = p/(p-1).
double lp_indicator_distance(const LpIndicatorCase& c);

/// D_m(1_B) in l^1: N - m (m <= N), m - N (N <= m <= 2N), N (m >= 2N).
double l1_indicator_distance(std::size_t n, std::size_t m);

}  // namespace greedylab
