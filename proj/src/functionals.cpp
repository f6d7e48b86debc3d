#include "greedylab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "greedylab/combinatorics.hpp"
#include "greedylab/greedy.hpp"

namespace greedylab {

Scope Scope::range(Index n, bool exhaustive) {
  Scope s;
  s.indices.resize(n);
  std::iota(s.indices.begin(), s.indices.end(), Index{1});
  s.exhaustive = exhaustive;
  return s;
}

namespace {

// Reusable buffers for line searches of a fixed x along many directions.
class LineWorkspace {
 public:
  LineWorkspace(const SpaceSpec& space, const CoeffVector& x, LineSearchOptions opts)
      : space_(space), x_(x.entries()), half_width_(x.sup_norm() + 1.0), opts_(opts) {}

  // `dir_idx` ascending; `dir_val` nonzero.
  LineDistance solve(std::span<const Index> dir_idx, std::span<const double> dir_val) {
    idx_.clear();
    xv_.clear();
    dv_.clear();
    std::size_t i = 0, j = 0;
    while (i < x_.size() || j < dir_idx.size()) {
      if (j == dir_idx.size() || (i < x_.size() && x_[i].index < dir_idx[j])) {
        push(x_[i].index, x_[i].value, 0.0);
        ++i;
      } else if (i == x_.size() || dir_idx[j] < x_[i].index) {
        push(dir_idx[j], 0.0, dir_val[j]);
        ++j;
      } else {
        push(x_[i].index, x_[i].value, dir_val[j]);
        ++i;
        ++j;
      }
    }
    scratch_.resize(idx_.size());
    auto f = [this](double alpha) {
      for (std::size_t k = 0; k < idx_.size(); ++k) scratch_[k] = xv_[k] - alpha * dv_[k];
      return space_.norm(idx_, scratch_);
    };
    const LineMinimum lm = minimize_convex(f, 0.0, half_width_, opts_);

    // Candidates: 0, the kinks x_n / d_n, and the least-squares coefficient.
    // A candidate within rounding of the search minimum is preferred.
    LineDistance cand{f(0.0), 0.0};
    double xd = 0.0, dd = 0.0;
    for (std::size_t k = 0; k < idx_.size(); ++k) {
      xd = std::fma(xv_[k], dv_[k], xd);
      dd = std::fma(dv_[k], dv_[k], dd);
      if (xv_[k] == 0.0 || dv_[k] == 0.0) continue;
      const double alpha = xv_[k] / dv_[k];
      const double v = f(alpha);
      if (v < cand.distance) cand = {v, alpha};
    }
    if (dd > 0.0) {
      const double alpha = xd / dd;
      const double v = f(alpha);
      if (v < cand.distance) cand = {v, alpha};
    }
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * lm.value;
    if (cand.distance <= lm.value + slack) return cand;
    return {lm.value, lm.arg};
  }

 private:
  void push(Index n, double xv, double dv) {
    idx_.push_back(n);
    xv_.push_back(xv);
    dv_.push_back(dv);
  }

  const SpaceSpec& space_;
  const std::vector<Entry>& x_;
  double half_width_;
  LineSearchOptions opts_;
  std::vector<Index> idx_;
  std::vector<double> xv_, dv_, scratch_;
};

void require_scope_covers(const IndexSet& supp, const Scope& scope, std::size_t m) {
  if (!is_subset(supp, scope.indices)) {
    throw Error(ErrorKind::ScopeTooSmall, "scope does not contain supp(x)");
  }
  if (m > scope.size()) {
    throw Error(ErrorKind::ScopeTooSmall, "m = " + std::to_string(m) + " exceeds |scope| = " +
                                              std::to_string(scope.size()));
  }
}

void require_within_cap(std::uint64_t count, const EnumerationLimits& limits) {
  if (count > limits.max_enumeration) {
    throw Error(ErrorKind::CapExceeded, "enumeration of " + std::to_string(count) +
                                            " configurations exceeds cap " +
                                            std::to_string(limits.max_enumeration));
  }
}

void require_scope_cap(const Scope& scope, const EnumerationLimits& limits) {
  if (scope.size() > limits.max_scope) {
    throw Error(ErrorKind::CapExceeded, "|scope| = " + std::to_string(scope.size()) +
                                            " exceeds max scope " +
                                            std::to_string(limits.max_scope));
  }
}

// Lexicographic key for tie-breaking: A first, then eps with + before -.
bool key_less(const std::vector<Index>& a1, const std::vector<int>& s1,
              const std::vector<Index>& a2, const std::vector<int>& s2) {
  if (a1 != a2) return a1 < a2;
  for (std::size_t i = 0; i < s1.size() && i < s2.size(); ++i) {
    if (s1[i] != s2[i]) return s1[i] > s2[i];
  }
  return false;
}

struct BestLine {
  bool set = false;
  double value = 0.0;
  double alpha = 0.0;
  std::vector<Index> set_indices;
  std::vector<int> signs;

  void offer(const LineDistance& ld, const std::vector<Index>& a, const std::vector<int>& s) {
    if (!set || ld.distance < value ||
        (ld.distance == value && key_less(a, s, set_indices, signs))) {
      set = true;
      value = ld.distance;
      alpha = ld.alpha;
      set_indices = a;
      signs = s;
    }
  }
};

FunctionalResult indicator_lines(const SpaceSpec& space, const CoeffVector& x, std::size_t m,
                                 const Scope& scope, const EnumerationLimits& limits,
                                 bool is_signed) {
  if (m == 0) throw Error(ErrorKind::DomainError, "m must be positive");
  const IndexSet supp = x.support();
  require_scope_covers(supp, scope, m);
  const IndexSet off = set_difference(scope.indices, supp);
  if (!scope.exhaustive && off.size() < m) {
    throw Error(ErrorKind::ScopeTooSmall, "scope needs at least m = " + std::to_string(m) +
                                              " indices outside supp(x), has " +
                                              std::to_string(off.size()));
  }

  LineWorkspace ws(space, x, LineSearchOptions{});
  BestLine best;
  std::uint64_t count = 0;
  std::vector<Index> a;
  std::vector<int> s;
  std::vector<double> dir;

  auto run = [&] {
    dir.assign(s.begin(), s.end());
    best.offer(ws.solve(a, dir), a, s);
    ++count;
  };

  // Sign patterns over `free` positions of `a`: the first free position is
  // pinned to +1 (global sign symmetry), the others range over +-1.
  auto for_each_sign = [&](const std::vector<std::size_t>& free) {
    if (!is_signed || free.size() <= 1) {
      run();
      return;
    }
    const std::size_t bits = free.size() - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
      for (std::size_t t = 1; t < free.size(); ++t) {
        s[free[t]] = ((mask >> (t - 1)) & 1u) ? -1 : 1;
      }
      run();
    }
  };

  Exactness exactness = Exactness::Exact;
  if (space.is_symmetric()) {
    // The norm sees A only through A ∩ supp(x) and |A \ supp(x)|: enumerate the
    // support part and pad with the smallest off-support indices of the scope.
    const std::size_t n = supp.size();
    const std::size_t jmin = m > off.size() ? m - off.size() : 0;
    const std::size_t jmax = std::min(m, n);
    std::uint64_t total = 0;
    for (std::size_t j = jmin; j <= jmax; ++j) {
      const std::uint64_t signs = (is_signed && j > 1) ? (std::uint64_t{1} << (j - 1)) : 1;
      total = saturating_add(total, saturating_mul(binomial(n, j), signs));
    }
    require_within_cap(total, limits);

    std::vector<std::size_t> free;
    for (std::size_t j = jmin; j <= jmax; ++j) {
      const std::size_t pad = m - j;
      for_each_combination(n, j, [&](std::span<const std::size_t> pos) {
        a.clear();
        for (std::size_t p : pos) a.push_back(supp[p]);
        for (std::size_t p = 0; p < pad; ++p) a.push_back(off[p]);
        std::sort(a.begin(), a.end());
        s.assign(a.size(), 1);
        free.clear();
        for (std::size_t p : pos) {
          free.push_back(static_cast<std::size_t>(
              std::lower_bound(a.begin(), a.end(), supp[p]) - a.begin()));
        }
        for_each_sign(free);
      });
    }
  } else {
    require_scope_cap(scope, limits);
    const std::uint64_t signs = (is_signed && m > 1) ? (std::uint64_t{1} << (m - 1)) : 1;
    require_within_cap(saturating_mul(binomial(scope.size(), m), signs), limits);
    std::vector<std::size_t> free(m);
    std::iota(free.begin(), free.end(), std::size_t{0});
    for_each_combination(scope.size(), m, [&](std::span<const std::size_t> pos) {
      a.clear();
      for (std::size_t p : pos) a.push_back(scope.indices[p]);
      s.assign(m, 1);
      for_each_sign(free);
    });
    if (!scope.exhaustive) exactness = Exactness::WithinScope;
  }

  FunctionalResult r;
  r.value = best.value;
  r.witness_alpha = best.alpha;
  r.witness_set = SignedSet(best.set_indices, best.signs);
  r.approximant = best.alpha * indicator(r.witness_set);
  r.enumeration_count = count;
  r.exactness = exactness;
  return r;
}

// ---------------------------------------------------------------------------
// sigma_m

// Pads `a` (a subset of supp) to m indices with the smallest off-support ones.
std::vector<Index> pad_to(std::vector<Index> a, const IndexSet& off, std::size_t m) {
  for (std::size_t p = 0; a.size() < m && p < off.size(); ++p) a.push_back(off[p]);
  std::sort(a.begin(), a.end());
  return a;
}

FunctionalResult make_sigma_result(std::vector<Index> a, CoeffVector approximant, double value,
                                   std::uint64_t count, Exactness exactness) {
  FunctionalResult r;
  r.value = value;
  r.witness_set = SignedSet(std::move(a));
  r.approximant = std::move(approximant);
  r.enumeration_count = count;
  r.exactness = exactness;
  return r;
}

// min over b in span(e_A) of max_n |S_n(x) - S_n(b)| for the summing norm. The
// partial sums of b form a step function, free on each block [a_j, a_{j+1}).
double summing_block_distance(const std::vector<Entry>& e, std::span<const Index> a,
                              std::vector<double>* heights) {
  std::size_t i = 0;
  double partial = 0.0;
  double value = 0.0;
  while (i < e.size() && e[i].index < a[0]) {
    partial += e[i].value;
    value = std::max(value, std::abs(partial));
    ++i;
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    while (i < e.size() && e[i].index <= a[j]) {
      partial += e[i].value;
      ++i;
    }
    double lo = partial;
    double hi = partial;
    const bool last = j + 1 == a.size();
    while (i < e.size() && (last || e[i].index < a[j + 1])) {
      partial += e[i].value;
      lo = std::min(lo, partial);
      hi = std::max(hi, partial);
      ++i;
    }
    value = std::max(value, 0.5 * (hi - lo));
    if (heights) heights->push_back(0.5 * (hi + lo));
  }
  return value;
}

// Cyclic coordinate search for inf_{b in span(e_A)} ||x - b||; returns the best
// value over three starting points and writes the minimizing coefficients.
double coordinate_search(const SpaceSpec& space, const CoeffVector& x,
                         const std::vector<Index>& a, std::vector<double>& b_out) {
  const IndexSet u = set_union(x.support(), a);
  std::vector<double> xv(u.size()), vals(u.size());
  std::vector<std::size_t> slot(a.size());
  for (std::size_t k = 0; k < u.size(); ++k) xv[k] = x.coeff(u[k]);
  for (std::size_t j = 0; j < a.size(); ++j) {
    slot[j] = static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), a[j]) - u.begin());
  }
  std::vector<double> b(a.size());
  auto objective = [&] {
    for (std::size_t k = 0; k < u.size(); ++k) vals[k] = xv[k];
    for (std::size_t j = 0; j < a.size(); ++j) vals[slot[j]] -= b[j];
    return space.norm(u, vals);
  };

  const double scale = x.sup_norm() + 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (double start : {0.0, 1.0, 0.5}) {
    for (std::size_t j = 0; j < a.size(); ++j) b[j] = start * xv[slot[j]];
    double current = objective();
    for (int sweep = 0; sweep < 1000; ++sweep) {
      const double before = current;
      for (std::size_t j = 0; j < a.size(); ++j) {
        auto along = [&](double t) {
          b[j] = t;
          return objective();
        };
        const double keep = b[j];
        const LineMinimum lm = minimize_convex(along, keep, scale + std::abs(keep));
        b[j] = lm.value <= current ? lm.arg : keep;
        current = std::min(current, lm.value);
      }
      if (before - current <= 1e-10 * std::max(before, 1e-300)) break;
    }
    current = objective();
    if (current < best) {
      best = current;
      b_out = b;
    }
  }
  return best;
}

}  // namespace

LineDistance line_distance(const SpaceSpec& space, const CoeffVector& x, const CoeffVector& dir,
                           const LineSearchOptions& opts) {
  if (dir.empty()) throw Error(ErrorKind::ZeroDirection, "direction vector is zero");
  std::vector<Index> idx;
  std::vector<double> val;
  for (const Entry& e : dir.entries()) {
    idx.push_back(e.index);
    val.push_back(e.value);
  }
  LineWorkspace ws(space, x, opts);
  return ws.solve(idx, val);
}

double reevaluate(const SpaceSpec& space, const CoeffVector& x, const FunctionalResult& r) {
  return space.norm(x - r.approximant);
}

FunctionalResult sigma_m(const SpaceSpec& space, const CoeffVector& x, std::size_t m,
                         const Scope& scope, const EnumerationLimits& limits, SigmaMethod method) {
  const IndexSet supp = x.support();
  require_scope_covers(supp, scope, m);
  const IndexSet off = set_difference(scope.indices, supp);
  const std::size_t n = supp.size();

  if (m >= n) {
    return make_sigma_result(pad_to(supp, off, m), x, 0.0, 1, Exactness::Exact);
  }

  if (method == SigmaMethod::CoordinateSearch) {
    require_scope_cap(scope, limits);
    require_within_cap(binomial(scope.size(), m), limits);
    double best = std::numeric_limits<double>::infinity();
    std::vector<Index> best_a;
    std::vector<double> best_b, b;
    std::vector<Index> a;
    std::uint64_t count = 0;
    for_each_combination(scope.size(), m, [&](std::span<const std::size_t> pos) {
      a.clear();
      for (std::size_t p : pos) a.push_back(scope.indices[p]);
      const double v = coordinate_search(space, x, a, b);
      ++count;
      if (v < best) {
        best = v;
        best_a = a;
        best_b = b;
      }
    });
    std::vector<Entry> approx;
    for (std::size_t j = 0; j < best_a.size(); ++j) approx.push_back({best_a[j], best_b[j]});
    return make_sigma_result(best_a, CoeffVector::sparse(std::move(approx)), best, count,
                             Exactness::UpperBound);
  }

  if (std::holds_alternative<Hilbert>(space.kind())) {
    // Orthogonal projection onto the m largest coordinates.
    const IndexSet keep = greedy_ordering(x).first(m);
    CoeffVector approx = project(x, keep);
    const double v = space.norm(x - approx);
    return make_sigma_result(keep, std::move(approx), v, 1, Exactness::Exact);
  }

  if (space.is_lattice()) {
    // Best coordinate restriction; off-support indices never help.
    require_within_cap(binomial(n, m), limits);
    const auto& e = x.entries();
    std::vector<Index> tail_idx;
    std::vector<double> tail_val;
    std::vector<bool> chosen(n);
    double best = std::numeric_limits<double>::infinity();
    std::vector<Index> best_a;
    std::uint64_t count = 0;
    for_each_combination(n, m, [&](std::span<const std::size_t> pos) {
      std::fill(chosen.begin(), chosen.end(), false);
      for (std::size_t p : pos) chosen[p] = true;
      tail_idx.clear();
      tail_val.clear();
      for (std::size_t k = 0; k < n; ++k) {
        if (chosen[k]) continue;
        tail_idx.push_back(e[k].index);
        tail_val.push_back(e[k].value);
      }
      const double v = space.norm(tail_idx, tail_val);
      ++count;
      if (v < best) {
        best = v;
        best_a.clear();
        for (std::size_t p : pos) best_a.push_back(supp[p]);
      }
    });
    CoeffVector approx = project(x, best_a);
    return make_sigma_result(best_a, std::move(approx), best, count, Exactness::Exact);
  }

  // SummingC0: every A inside the scope, block formula for the inner minimum.
  require_scope_cap(scope, limits);
  require_within_cap(binomial(scope.size(), m), limits);
  const auto& e = x.entries();
  double best = std::numeric_limits<double>::infinity();
  std::vector<Index> a, best_a;
  std::uint64_t count = 0;
  for_each_combination(scope.size(), m, [&](std::span<const std::size_t> pos) {
    a.clear();
    for (std::size_t p : pos) a.push_back(scope.indices[p]);
    const double v = summing_block_distance(e, a, nullptr);
    ++count;
    if (v < best) {
      best = v;
      best_a = a;
    }
  });
  std::vector<double> heights;
  summing_block_distance(e, best_a, &heights);
  std::vector<Entry> approx;
  double previous = 0.0;
  for (std::size_t j = 0; j < best_a.size(); ++j) {
    approx.push_back({best_a[j], heights[j] - previous});
    previous = heights[j];
  }
  return make_sigma_result(best_a, CoeffVector::sparse(std::move(approx)), best, count,
                           scope.exhaustive ? Exactness::Exact : Exactness::WithinScope);
}

FunctionalResult indicator_distance(const SpaceSpec& space, const CoeffVector& x, std::size_t m,
                                    const Scope& scope, const EnumerationLimits& limits) {
  return indicator_lines(space, x, m, scope, limits, false);
}

FunctionalResult signed_indicator_distance(const SpaceSpec& space, const CoeffVector& x,
                                           std::size_t m, const Scope& scope,
                                           const EnumerationLimits& limits) {
  return indicator_lines(space, x, m, scope, limits, true);
}

double hilbert_indicator_distance(const CoeffVector& x, std::size_t m, bool is_signed) {
  if (m == 0) throw Error(ErrorKind::DomainError, "m must be positive");
  // The optimal A takes the m largest (signed: largest in magnitude) values of
  // one sign, padded with zeros. Evaluate ||x||^2 - <x,1_A>^2/m as
  // sum_{k not in A} x_k^2 + sum_{k in A} (x_k - mean_A)^2 to avoid cancellation.
  std::vector<double> pos, neg;
  for (const Entry& e : x.entries()) {
    if (is_signed) {
      pos.push_back(std::abs(e.value));
    } else if (e.value > 0) {
      pos.push_back(e.value);
    } else {
      neg.push_back(-e.value);
    }
  }
  std::sort(pos.begin(), pos.end(), std::greater<>());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  auto top_sum = [m](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size() && i < m; ++i) s += v[i];
    return s;
  };
  const bool use_pos = top_sum(pos) >= top_sum(neg);
  const std::vector<double>& chosen = use_pos ? pos : neg;
  const std::vector<double>& other = use_pos ? neg : pos;

  const std::size_t k = std::min(m, chosen.size());
  const double mean = top_sum(chosen) / static_cast<double>(m);
  double d2 = 0.0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const double v = chosen[i];
    d2 += i < k ? (v - mean) * (v - mean) : v * v;
  }
  d2 += static_cast<double>(m - k) * mean * mean;
  for (double v : other) d2 += v * v;
  return std::sqrt(d2);
}

}  // namespace greedylab
