#pragma once

#include <cstddef>
#include <vector>

#include "greedylab/space.hpp"

namespace greedylab {

/// Natural greedy ordering of supp(x): decreasing |coefficient|, equal
/// magnitudes (compared exactly) broken by the smaller index.
struct GreedyOrdering {
  std::vector<Index> order;

  /// The first min(m, |supp|) indices, sorted ascending.
  IndexSet first(std::size_t m) const;

  friend bool operator==(const GreedyOrdering&, const GreedyOrdering&) = default;
};

GreedyOrdering greedy_ordering(const CoeffVector& x);

/// G_m(x): x restricted to the first m indices of its natural greedy ordering.
CoeffVector greedy_sum(const CoeffVector& x, std::size_t m);

/// ||x - G_m(x)||.
double greedy_residual_norm(const SpaceSpec& space, const CoeffVector& x, std::size_t m);

}  // namespace greedylab
