#include "greedylab/greedy.hpp"

#include <algorithm>
#include <cmath>

namespace greedylab {

IndexSet GreedyOrdering::first(std::size_t m) const {
  const std::size_t k = std::min(m, order.size());
  IndexSet out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

GreedyOrdering greedy_ordering(const CoeffVector& x) {
  std::vector<Entry> entries = x.entries();
  // Exact magnitude comparison; entries arrive sorted by index so a stable sort
  // already breaks ties by index, but spell the rule out.
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    return a.index < b.index;
  });
  GreedyOrdering out;
  out.order.reserve(entries.size());
  for (const Entry& e : entries) out.order.push_back(e.index);
  return out;
}

CoeffVector greedy_sum(const CoeffVector& x, std::size_t m) {
  if (m == 0) return {};
  if (m >= x.support_size()) return x;
  return project(x, greedy_ordering(x).first(m));
}

double greedy_residual_norm(const SpaceSpec& space, const CoeffVector& x, std::size_t m) {
  return space.norm(x - greedy_sum(x, m));
}

}  // namespace greedylab
