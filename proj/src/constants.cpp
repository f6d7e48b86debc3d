#include "greedylab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>

#include "greedylab/combinatorics.hpp"
#include "greedylab/error.hpp"
#include "greedylab/greedy.hpp"

namespace greedylab {

namespace names = constant_names;

void InstanceFamily::validate() const {
  if (universe == 0) throw Error(ErrorKind::EmptyFamily, "family universe is empty");
  for (const auto* g : {&x_grid, &y_grid}) {
    for (double v : *g) {
      if (!std::isfinite(v) || v == 0.0) {
        throw Error(ErrorKind::DomainError, "grid values must be finite and nonzero");
      }
    }
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::DomainError, "delta must be positive");
  }
}

bool in_gamma(const CoeffVector& z, const CoeffVector& y) {
  if (z.empty()) return true;
  if (!are_disjoint(z.support(), y.support())) return false;
  std::size_t unit = 0;
  for (const auto& e : y.entries()) unit += std::abs(e.value) == 1.0 ? 1 : 0;
  return z.support_size() <= unit;
}

namespace {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : gen_(seed * 0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL + 1) {}

  std::size_t below(std::size_t k) { return static_cast<std::size_t>(gen_() % k); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }
  // Random value on a grid (probability 1/2) or uniform on [-r, r].
  double value(const std::vector<double>& grid, double r) {
    double v = below(2) == 0 ? grid[below(grid.size())] : uniform(-r, r);
    return v == 0.0 ? r : v;
  }
  // Fisher-Yates prefix: the first k entries of the result are a random k-set.
  std::vector<Index> shuffled(const IndexSet& pool, std::size_t k) {
    std::vector<Index> v = pool;
    for (std::size_t i = 0; i < k && i < v.size(); ++i) std::swap(v[i], v[i + below(v.size() - i)]);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

enum Stream : std::uint64_t {
  kStreamKsu = 1,
  kStreamQuasi,
  kStreamAlmost,
  kStreamGreedy,
  kStreamDVariant,
  kStreamA,
  kStreamQ,
  kStreamQStar,
  kStreamSup,
};

IndexSet universe_set(Index n) { return Scope::range(n).indices; }

double max_abs(const std::vector<double>& g) {
  double r = 0.0;
  for (double v : g) r = std::max(r, std::abs(v));
  return r;
}

std::vector<double> bounded(const std::vector<double>& g) {
  std::vector<double> out;
  for (double v : g)
    if (std::abs(v) <= 1.0) out.push_back(v);
  return out;
}

// Every assignment of at most `max_support` indices of `indices` to a value of
// one of the grids; fn receives one vector per grid.
template <typename Fn>
void for_each_labeled(const IndexSet& indices, const std::vector<std::vector<double>>& grids,
                      std::size_t max_support, Fn&& fn) {
  std::vector<std::pair<std::size_t, double>> options;
  for (std::size_t l = 0; l < grids.size(); ++l)
    for (double v : grids[l]) options.emplace_back(l, v);
  std::vector<std::vector<Entry>> parts(grids.size());
  std::vector<CoeffVector> vecs(grids.size());
  const std::size_t smax = std::min(max_support, indices.size());
  for (std::size_t s = 0; s <= smax; ++s) {
    if (s > 0 && options.empty()) break;
    for_each_combination(indices.size(), s, [&](std::span<const std::size_t> pos) {
      std::vector<std::size_t> digit(s, 0);
      while (true) {
        for (auto& p : parts) p.clear();
        for (std::size_t j = 0; j < s; ++j) {
          const auto& [l, v] = options[digit[j]];
          parts[l].push_back({indices[pos[j]], v});
        }
        for (std::size_t l = 0; l < parts.size(); ++l) vecs[l] = CoeffVector::sparse(parts[l]);
        fn(static_cast<const std::vector<CoeffVector>&>(vecs));
        std::size_t j = s;
        while (j > 0 && digit[j - 1] + 1 == options.size()) digit[--j] = 0;
        if (j == 0) return;
        ++digit[j - 1];
      }
    });
  }
}

template <typename Fn>
void for_each_subset_of(const IndexSet& pool, std::size_t k, Fn&& fn) {
  IndexSet a(k);
  for_each_combination(pool.size(), k, [&](std::span<const std::size_t> pos) {
    for (std::size_t j = 0; j < k; ++j) a[j] = pool[pos[j]];
    fn(static_cast<const IndexSet&>(a));
  });
}

std::vector<int> signs_from_mask(std::size_t k, std::uint64_t mask) {
  std::vector<int> s(k);
  for (std::size_t j = 0; j < k; ++j) s[j] = (mask >> j & 1) ? -1 : 1;
  return s;
}

IndexSet subset_from_mask(const IndexSet& pool, std::uint64_t mask) {
  IndexSet a;
  for (std::size_t j = 0; j < pool.size(); ++j)
    if (mask >> j & 1) a.push_back(pool[j]);
  return a;
}

struct Tagged {
  CoeffVector v;
  const char* origin;
};

bool entries_less(const std::vector<Entry>& a, const std::vector<Entry>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Entry& u, const Entry& w) {
                                        return u.index != w.index ? u.index < w.index
                                                                  : u.value < w.value;
                                      });
}

// Grid vectors, then signed indicators not already present, then (optionally)
// perturbed variants, then random draws.
std::vector<Tagged> free_vectors(const InstanceFamily& f, bool variants, Stream stream) {
  f.validate();
  const IndexSet u = universe_set(f.universe);
  std::vector<Tagged> out;
  std::set<std::vector<Entry>, decltype(&entries_less)> seen(&entries_less);
  auto add = [&](const CoeffVector& v, const char* origin) {
    if (v.empty()) return;
    if (seen.insert(v.entries()).second) out.push_back({v, origin});
  };
  for_each_labeled(u, {f.x_grid}, f.max_support,
                   [&](const std::vector<CoeffVector>& p) { add(p[0], "grid"); });
  for_each_labeled(u, {{1.0, -1.0}}, f.universe,
                   [&](const std::vector<CoeffVector>& p) { add(p[0], "sign"); });
  if (variants) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) {
      const std::vector<Entry> e = out[i].v.entries();
      if (e.size() >= 63) continue;
      const std::uint64_t full = (std::uint64_t{1} << e.size()) - 1;
      for (std::uint64_t mask = 1; mask < full; ++mask) {
        std::vector<Entry> p = e;
        for (std::size_t j = 0; j < p.size(); ++j)
          if (mask >> j & 1) p[j].value *= 1.0 + f.delta;
        out.push_back({CoeffVector::sparse(std::move(p)), "perturbed"});
      }
    }
  }
  Rng rng(f.rng_seed, stream);
  const double r = max_abs(f.x_grid);
  for (std::size_t i = 0; i < f.random_samples; ++i) {
    const std::size_t s = 1 + rng.below(f.universe);
    const auto idx = rng.shuffled(u, s);
    std::vector<Entry> e;
    for (std::size_t j = 0; j < s; ++j) e.push_back({idx[j], rng.value(f.x_grid, r)});
    out.push_back({CoeffVector::sparse(std::move(e)), "random"});
  }
  return out;
}

// Running maximum of num / den with first-found tie-breaking.
class Tracker {
 public:
  Tracker(std::string name, const InstanceFamily& f, const EstimatorOptions& o)
      : opts_(o) {
    est_.name = std::move(name);
    est_.family = f;
  }

  template <typename Make>
  void offer(double num, double den, std::uint64_t weight, Make&& make) {
    est_.evaluated += weight;
    if (!(den > opts_.denominator_cutoff)) {
      ++est_.segregated;
      if (num > opts_.tolerance.abs && est_.unbounded.size() < 16) {
        Witness w = make();
        w.numerator = num;
        w.denominator = den;
        est_.unbounded.push_back(std::move(w));
      }
      return;
    }
    const double ratio = num / den;
    if (!est_.witness || ratio > est_.lower_bound) {
      est_.lower_bound = ratio;
      Witness w = make();
      w.numerator = num;
      w.denominator = den;
      est_.witness = std::move(w);
    }
  }

  ConstantEstimate finish() {
    if (est_.evaluated == 0) {
      throw Error(ErrorKind::EmptyFamily, est_.name + ": family generated no configurations");
    }
    if (est_.witness) {
      est_.variant = est_.witness->variant;
      est_.method = std::string(est_.witness->origin) == "random"
                        ? "random"
                        : (est_.family.exhaustive() ? "exhaustive" : "grid");
    } else {
      est_.method = est_.family.exhaustive() ? "exhaustive" : "grid";
    }
    return std::move(est_);
  }

  ConstantEstimate& estimate() { return est_; }

 private:
  EstimatorOptions opts_;
  ConstantEstimate est_;
};

// Best of several part estimates becomes the parent's bound and witness.
void adopt_parts(ConstantEstimate& parent, std::vector<ConstantEstimate> parts) {
  for (const auto& p : parts) {
    parent.evaluated += p.evaluated;
    parent.segregated += p.segregated;
    if (p.witness && (!parent.witness || p.lower_bound > parent.lower_bound)) {
      parent.lower_bound = p.lower_bound;
      parent.witness = p.witness;
      parent.variant = p.variant;
      parent.method = p.method;
    }
    parent.unbounded.insert(parent.unbounded.end(), p.unbounded.begin(), p.unbounded.end());
  }
  if (!parent.witness && !parts.empty()) parent.method = parts.front().method;
  parent.parts = std::move(parts);
}

// Disjoint equal-size signed pairs (A, B) with x on the rest: the callback
// gets the maximal ||x + 1_{eps A}|| and minimal ||x + 1_{eps' B}||.
using PairCallback = std::function<void(const CoeffVector& x, const SignedSet& a,
                                        const SignedSet& b, double num, double den,
                                        std::uint64_t weight, const char* origin)>;

void signed_pair_extremes(const SpaceSpec& space, const CoeffVector& x, const IndexSet& a,
                          const IndexSet& b, const char* origin, const PairCallback& cb) {
  const std::size_t k = a.size();
  double num = -1.0, den = std::numeric_limits<double>::infinity();
  std::uint64_t num_mask = 0, den_mask = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    const auto s = signs_from_mask(k, mask);
    const double va = space.norm(x + indicator(SignedSet(a, s)));
    const double vb = space.norm(x + indicator(SignedSet(b, s)));
    if (va > num) {
      num = va;
      num_mask = mask;
    }
    if (vb < den) {
      den = vb;
      den_mask = mask;
    }
  }
  const std::uint64_t weight = std::uint64_t{1} << (2 * k);
  cb(x, SignedSet(a, signs_from_mask(k, num_mask)), SignedSet(b, signs_from_mask(k, den_mask)),
     num, den, weight, origin);
}

void propA_configurations(const SpaceSpec& space, const InstanceFamily& f,
                          const PairCallback& cb) {
  f.validate();
  const IndexSet u = universe_set(f.universe);
  const std::vector<double> xb = bounded(f.x_grid);
  const std::size_t kmax = std::min<std::size_t>(f.max_set_size, f.universe / 2);
  for (std::size_t k = 0; k <= kmax; ++k) {
    for_each_subset_of(u, k, [&](const IndexSet& a) {
      const IndexSet rest1 = set_difference(u, a);
      for_each_subset_of(rest1, k, [&](const IndexSet& b) {
        const IndexSet rest = set_difference(rest1, b);
        for_each_labeled(rest, {xb}, f.max_support, [&](const std::vector<CoeffVector>& p) {
          signed_pair_extremes(space, p[0], a, b, "grid", cb);
        });
      });
    });
  }
  Rng rng(f.rng_seed, kStreamA);
  for (std::size_t i = 0; i < f.random_samples; ++i) {
    const std::size_t k = rng.below(kmax + 1);
    const auto perm = rng.shuffled(u, u.size());
    const IndexSet a = make_index_set({perm.begin(), perm.begin() + k});
    const IndexSet b = make_index_set({perm.begin() + k, perm.begin() + 2 * k});
    const std::size_t free = u.size() - 2 * k;
    const std::size_t s = rng.below(free + 1);
    std::vector<Entry> e;
    for (std::size_t j = 0; j < s; ++j) e.push_back({perm[2 * k + j], rng.value(xb.empty() ? std::vector<double>{1.0} : xb, 1.0)});
    signed_pair_extremes(space, CoeffVector::sparse(std::move(e)), a, b, "random", cb);
  }
}

// (w, A) suppression configurations over the free vectors.
template <typename Fn>
void suppression_configurations(const std::vector<Tagged>& vecs, Fn&& fn) {
  for (const auto& t : vecs) {
    const IndexSet supp = t.v.support();
    if (supp.size() >= 63) continue;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << supp.size()); ++mask) {
      fn(t, subset_from_mask(supp, mask));
    }
  }
}

Scope default_scope(const InstanceFamily& f, const std::optional<Scope>& scope) {
  return scope ? *scope : Scope::range(f.universe, true);
}

double almost_greedy_denominator(const SpaceSpec& space, const CoeffVector& x, std::size_t m,
                                 IndexSet* best_set) {
  const IndexSet supp = x.support();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << supp.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > m) continue;
    const IndexSet a = subset_from_mask(supp, mask);
    const double v = space.norm(x - project(x, a));
    if (v < best) {
      best = v;
      if (best_set) *best_set = a;
    }
  }
  return best;
}

}  // namespace

ConstantEstimate estimate_K_su(const SpaceSpec& space, const InstanceFamily& family,
                               const EstimatorOptions& opts) {
  Tracker t(names::kSuppression, family, opts);
  const auto vecs = free_vectors(family, false, kStreamKsu);
  for (const auto& tv : vecs) {
    const IndexSet supp = tv.v.support();
    const double den = space.norm(tv.v);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << supp.size()); ++mask) {
      const IndexSet a = subset_from_mask(supp, mask);
      t.offer(space.norm(project(tv.v, a)), den, 1, [&] {
        Witness w;
        w.variant = "suppression";
        w.origin = tv.origin;
        w.x = tv.v;
        w.a = SignedSet(a);
        return w;
      });
    }
  }
  return t.finish();
}

ConstantEstimate estimate_democracy(const SpaceSpec& space, const InstanceFamily& family,
                                    const EstimatorOptions& opts) {
  family.validate();
  const IndexSet u = universe_set(family.universe);
  const std::size_t kmax = std::min<std::size_t>(family.max_set_size, family.universe);
  std::vector<ConstantEstimate> parts;
  Tracker disjoint("disjoint", family, opts);
  for (std::size_t k = 1; k <= kmax; ++k) {
    const std::uint64_t count = binomial(u.size(), k);
    if (saturating_mul(count, count) > opts.limits.max_enumeration) {
      throw Error(ErrorKind::CapExceeded,
                  "democracy pairs for k = " + std::to_string(k) + " exceed the enumeration cap");
    }
    std::vector<IndexSet> sets;
    std::vector<double> norms;
    for_each_subset_of(u, k, [&](const IndexSet& a) {
      sets.push_back(a);
      norms.push_back(space.norm(indicator(a)));
    });
    Tracker tk("k=" + std::to_string(k), family, opts);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j) {
        auto make = [&, variant = std::string(are_disjoint(sets[i], sets[j]) ? "disjoint k=" : "k=")] {
          Witness w;
          w.variant = variant + std::to_string(k);
          w.origin = "grid";
          w.a = SignedSet(sets[i]);
          w.b = SignedSet(sets[j]);
          w.m = k;
          return w;
        };
        tk.offer(norms[i], norms[j], 1, make);
        if (are_disjoint(sets[i], sets[j])) disjoint.offer(norms[i], norms[j], 1, make);
      }
    }
    parts.push_back(tk.finish());
    parts.back().method = "exhaustive";
  }
  ConstantEstimate out;
  out.name = names::kDemocracy;
  out.family = family;
  adopt_parts(out, std::move(parts));
  if (disjoint.estimate().evaluated > 0) {
    ConstantEstimate d = disjoint.finish();
    d.method = "exhaustive";
    out.parts.push_back(std::move(d));
  }
  if (out.evaluated == 0) throw Error(ErrorKind::EmptyFamily, "democracy: no sets");
  out.method = "exhaustive";
  return out;
}

ConstantEstimate estimate_quasi_greedy(const SpaceSpec& space, const InstanceFamily& family,
                                       const EstimatorOptions& opts) {
  Tracker q1("qG1", family, opts), q2("qG2", family, opts);
  for (const auto& tv : free_vectors(family, true, kStreamQuasi)) {
    const double den = space.norm(tv.v);
    for (std::size_t m = 0; m <= tv.v.support_size(); ++m) {
      const CoeffVector g = greedy_sum(tv.v, m);
      auto make = [&](const char* variant) {
        return [&, variant] {
          Witness w;
          w.variant = variant;
          w.origin = tv.origin;
          w.x = tv.v;
          w.m = m;
          return w;
        };
      };
      q1.offer(space.norm(tv.v - g), den, 1, make("qG1"));
      q2.offer(space.norm(g), den, 1, make("qG2"));
    }
  }
  ConstantEstimate out;
  out.name = names::kQuasiGreedy;
  out.family = family;
  adopt_parts(out, {q1.finish(), q2.finish()});
  return out;
}

ConstantEstimate estimate_almost_greedy(const SpaceSpec& space, const InstanceFamily& family,
                                        const EstimatorOptions& opts) {
  Tracker t(names::kAlmostGreedy, family, opts);
  for (const auto& tv : free_vectors(family, true, kStreamAlmost)) {
    const IndexSet supp = tv.v.support();
    if (supp.size() >= 63) continue;
    // best[j]: min ||x - P_A x|| over A in supp with |A| <= j.
    std::vector<double> best(supp.size() + 1, std::numeric_limits<double>::infinity());
    std::vector<std::uint64_t> arg(supp.size() + 1, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << supp.size()); ++mask) {
      const std::size_t c = static_cast<std::size_t>(__builtin_popcountll(mask));
      const double v = space.norm(tv.v - project(tv.v, subset_from_mask(supp, mask)));
      if (v < best[c]) {
        best[c] = v;
        arg[c] = mask;
      }
    }
    for (std::size_t j = 1; j < best.size(); ++j) {
      if (best[j - 1] <= best[j]) {
        best[j] = best[j - 1];
        arg[j] = arg[j - 1];
      }
    }
    for (std::size_t m = 0; m < supp.size(); ++m) {
      t.offer(greedy_residual_norm(space, tv.v, m), best[m], 1, [&] {
        Witness w;
        w.variant = "almost_greedy";
        w.origin = tv.origin;
        w.x = tv.v;
        w.m = m;
        w.a = SignedSet(subset_from_mask(supp, arg[m]));
        return w;
      });
    }
  }
  return t.finish();
}

ConstantEstimate estimate_greedy_constant(const SpaceSpec& space, const InstanceFamily& family,
                                          const std::optional<Scope>& scope,
                                          const EstimatorOptions& opts) {
  const Scope sc = default_scope(family, scope);
  Tracker t(names::kGreedy, family, opts);
  t.estimate().index_scope = sc;
  for (const auto& tv : free_vectors(family, true, kStreamGreedy)) {
    for (std::size_t m = 0; m < tv.v.support_size(); ++m) {
      const FunctionalResult s = m == 0 ? FunctionalResult{space.norm(tv.v), {}, 0.0, {}, 1,
                                                           Exactness::Exact}
                                        : sigma_m(space, tv.v, m, sc, opts.limits);
      t.offer(greedy_residual_norm(space, tv.v, m), s.value, 1, [&] {
        Witness w;
        w.variant = "sigma";
        w.origin = tv.origin;
        w.x = tv.v;
        w.m = m;
        w.a = s.witness_set;
        return w;
      });
    }
  }
  return t.finish();
}

DVariantEstimates estimate_D_variant_constants(const SpaceSpec& space,
                                               const InstanceFamily& family,
                                               const std::optional<Scope>& scope,
                                               const EstimatorOptions& opts) {
  const Scope sc = default_scope(family, scope);
  Tracker ts(names::kGreedyVsDStar, family, opts), td(names::kGreedyVsD, family, opts);
  ts.estimate().index_scope = sc;
  td.estimate().index_scope = sc;
  for (const auto& tv : free_vectors(family, true, kStreamDVariant)) {
    for (std::size_t m = 1; m < tv.v.support_size(); ++m) {
      const double res = greedy_residual_norm(space, tv.v, m);
      const FunctionalResult ds = signed_indicator_distance(space, tv.v, m, sc, opts.limits);
      const FunctionalResult d = indicator_distance(space, tv.v, m, sc, opts.limits);
      auto make = [&](const char* variant, const FunctionalResult& r) {
        return [&, variant] {
          Witness w;
          w.variant = variant;
          w.origin = tv.origin;
          w.x = tv.v;
          w.m = m;
          w.a = r.witness_set;
          return w;
        };
      };
      ts.offer(res, ds.value, 1, make("d_star", ds));
      td.offer(res, d.value, 1, make("d", d));
    }
  }
  return {ts.finish(), td.finish()};
}

ConstantEstimate estimate_propA(const SpaceSpec& space, const InstanceFamily& family,
                                const EstimatorOptions& opts) {
  Tracker t(names::kPropA, family, opts);
  propA_configurations(space, family,
                       [&](const CoeffVector& x, const SignedSet& a, const SignedSet& b,
                           double num, double den, std::uint64_t weight, const char* origin) {
                         t.offer(num, den, weight, [&] {
                           Witness w;
                           w.variant = "signed_pair";
                           w.origin = origin;
                           w.x = x;
                           w.a = a;
                           w.b = b;
                           return w;
                         });
                       });
  return t.finish();
}

ConstantEstimate estimate_propQ(const SpaceSpec& space, const InstanceFamily& family,
                                const EstimatorOptions& opts) {
  family.validate();
  Tracker t(names::kPropQ, family, opts);
  const IndexSet u = universe_set(family.universe);
  const std::vector<double> xb = bounded(family.x_grid);
  const std::size_t kmax = std::min<std::size_t>(family.max_set_size, family.universe / 2);
  auto offer = [&](const CoeffVector& x, const CoeffVector& y, const IndexSet& a,
                   const IndexSet& b, const char* origin) {
    t.offer(space.norm(x + indicator(a)), space.norm(x + y + indicator(b)), 1, [&] {
      Witness w;
      w.variant = "pair";
      w.origin = origin;
      w.x = x;
      w.y = y;
      w.a = SignedSet(a);
      w.b = SignedSet(b);
      return w;
    });
  };
  for (std::size_t k = 0; k <= kmax; ++k) {
    for_each_subset_of(u, k, [&](const IndexSet& a) {
      const IndexSet rest1 = set_difference(u, a);
      for_each_subset_of(rest1, k, [&](const IndexSet& b) {
        const IndexSet rest = set_difference(rest1, b);
        for_each_labeled(rest, {xb, family.y_grid}, family.max_support,
                         [&](const std::vector<CoeffVector>& p) {
                           offer(p[0], p[1], a, b, "grid");
                         });
      });
    });
  }
  InstanceFamily plain = family;
  plain.random_samples = 0;
  suppression_configurations(free_vectors(plain, false, kStreamQ),
                             [&](const Tagged& tv, const IndexSet& a) {
                               const CoeffVector x = project(tv.v, a);
                               if (x.sup_norm() > 1.0) return;
                               offer(x, tv.v - x, {}, {}, "embedded");
                             });
  Rng rng(family.rng_seed, kStreamQ);
  const double ry = max_abs(family.y_grid);
  for (std::size_t i = 0; i < family.random_samples; ++i) {
    const std::size_t k = rng.below(kmax + 1);
    const auto perm = rng.shuffled(u, u.size());
    const IndexSet a = make_index_set({perm.begin(), perm.begin() + k});
    const IndexSet b = make_index_set({perm.begin() + k, perm.begin() + 2 * k});
    const std::size_t s = rng.below(u.size() - 2 * k + 1);
    std::vector<Entry> ex, ey;
    for (std::size_t j = 0; j < s; ++j) {
      const Index n = perm[2 * k + j];
      if (rng.below(2) == 0) {
        ex.push_back({n, rng.uniform(-1.0, 1.0)});
      } else {
        ey.push_back({n, rng.value(family.y_grid, ry)});
      }
    }
    offer(CoeffVector::sparse(std::move(ex)), CoeffVector::sparse(std::move(ey)), a, b, "random");
  }
  return t.finish();
}

ConstantEstimate estimate_propQstar(const SpaceSpec& space, const InstanceFamily& family,
                                    const EstimatorOptions& opts) {
  family.validate();
  Tracker t(names::kPropQStar, family, opts);
  const IndexSet u = universe_set(family.universe);
  const std::vector<double> xb = bounded(family.x_grid);
  auto offer = [&](const CoeffVector& x, const CoeffVector& z, const CoeffVector& y,
                   const char* origin) {
    t.offer(space.norm(x + z), space.norm(x + y), 1, [&] {
      Witness w;
      w.variant = "triple";
      w.origin = origin;
      w.x = x;
      w.z = z;
      w.y = y;
      return w;
    });
  };
  for_each_labeled(u, {xb, xb, family.y_grid}, family.max_support,
                   [&](const std::vector<CoeffVector>& p) {
                     if (in_gamma(p[1], p[2])) offer(p[0], p[1], p[2], "grid");
                   });
  InstanceFamily plain = family;
  plain.random_samples = 0;
  propA_configurations(space, plain,
                       [&](const CoeffVector& x, const SignedSet& a, const SignedSet& b, double,
                           double, std::uint64_t, const char*) {
                         offer(x, indicator(a), indicator(b), "embedded");
                       });
  suppression_configurations(free_vectors(plain, false, kStreamQStar),
                             [&](const Tagged& tv, const IndexSet& a) {
                               const CoeffVector x = project(tv.v, a);
                               if (x.sup_norm() > 1.0) return;
                               offer(x, CoeffVector{}, tv.v - x, "embedded");
                             });
  Rng rng(family.rng_seed, kStreamQStar);
  const double ry = max_abs(family.y_grid);
  for (std::size_t i = 0; i < family.random_samples; ++i) {
    const std::size_t s = 1 + rng.below(u.size());
    const auto perm = rng.shuffled(u, s);
    std::vector<Entry> ex, ez, ey;
    for (std::size_t j = 0; j < s; ++j) {
      switch (rng.below(3)) {
        case 0: ex.push_back({perm[j], rng.uniform(-1.0, 1.0)}); break;
        case 1: ez.push_back({perm[j], rng.uniform(-1.0, 1.0)}); break;
        default:
          ey.push_back({perm[j], rng.below(2) == 0 ? (rng.below(2) == 0 ? 1.0 : -1.0)
                                                   : rng.value(family.y_grid, ry)});
      }
    }
    const CoeffVector z = CoeffVector::sparse(std::move(ez));
    const CoeffVector y = CoeffVector::sparse(std::move(ey));
    if (in_gamma(z, y)) offer(CoeffVector::sparse(std::move(ex)), z, y, "random");
  }
  return t.finish();
}

Witness reevaluate(const SpaceSpec& space, const std::string& name, const Witness& w,
                   const std::optional<Scope>& index_scope, const EnumerationLimits& limits) {
  Witness r = w;
  const auto scope = [&] {
    if (!index_scope) throw Error(ErrorKind::IncompleteSpec, name + " witness needs a scope");
    return *index_scope;
  };
  if (name == names::kSuppression) {
    r.numerator = space.norm(project(w.x, w.a.indices()));
    r.denominator = space.norm(w.x);
  } else if (name == names::kDemocracy) {
    r.numerator = space.norm(indicator(w.a.indices()));
    r.denominator = space.norm(indicator(w.b.indices()));
  } else if (name == names::kQuasiGreedy) {
    const CoeffVector g = greedy_sum(w.x, w.m);
    r.numerator = space.norm(w.variant == "qG2" ? g : w.x - g);
    r.denominator = space.norm(w.x);
  } else if (name == names::kAlmostGreedy) {
    r.numerator = greedy_residual_norm(space, w.x, w.m);
    r.denominator = almost_greedy_denominator(space, w.x, w.m, nullptr);
  } else if (name == names::kGreedy) {
    r.numerator = greedy_residual_norm(space, w.x, w.m);
    r.denominator = w.m == 0 ? space.norm(w.x) : sigma_m(space, w.x, w.m, scope(), limits).value;
  } else if (name == names::kGreedyVsDStar) {
    r.numerator = greedy_residual_norm(space, w.x, w.m);
    r.denominator = signed_indicator_distance(space, w.x, w.m, scope(), limits).value;
  } else if (name == names::kGreedyVsD) {
    r.numerator = greedy_residual_norm(space, w.x, w.m);
    r.denominator = indicator_distance(space, w.x, w.m, scope(), limits).value;
  } else if (name == names::kPropA) {
    r.numerator = space.norm(w.x + indicator(w.a));
    r.denominator = space.norm(w.x + indicator(w.b));
  } else if (name == names::kPropQ) {
    r.numerator = space.norm(w.x + indicator(w.a));
    r.denominator = space.norm(w.x + w.y + indicator(w.b));
  } else if (name == names::kPropQStar) {
    r.numerator = space.norm(w.x + w.z);
    r.denominator = space.norm(w.x + w.y);
  } else {
    throw Error(ErrorKind::DomainError, "unknown constant " + name);
  }
  return r;
}

double reevaluate(const SpaceSpec& space, const ConstantEstimate& e,
                  const EnumerationLimits& limits) {
  if (!e.witness) return 0.0;
  return reevaluate(space, e.name, *e.witness, e.index_scope, limits).ratio();
}

SupLemmaReport verify_sup_lemma(const SpaceSpec& space, const CoeffVector& x, const IndexSet& a,
                                std::size_t samples, std::uint64_t seed, const Tolerance& tol) {
  if (!are_disjoint(a, x.support())) {
    throw Error(ErrorKind::DisjointnessViolated, "A must be disjoint from supp(x)");
  }
  if (a.size() >= 63) throw Error(ErrorKind::CapExceeded, "|A| too large");
  SupLemmaReport r;
  const std::uint64_t n = std::uint64_t{1} << a.size();
  r.i1 = r.i2 = 0.0;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    r.i1 = std::max(r.i1, space.norm(x + indicator(subset_from_mask(a, mask))));
    r.i2 = std::max(r.i2, space.norm(x + indicator(SignedSet(a, signs_from_mask(a.size(), mask)))));
  }
  Rng rng(seed, kStreamSup);
  r.i3 = space.norm(x);
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Entry> e;
    for (Index k : a) e.push_back({k, rng.uniform(-1.0, 1.0)});
    r.i3 = std::max(r.i3, space.norm(x + CoeffVector::sparse(std::move(e))));
  }
  r.samples = samples;
  r.i1_le_i2 = tol.leq(r.i1, r.i2);
  r.i3_le_i2 = tol.leq(r.i3, r.i2);
  r.i2_le_3i1 = tol.leq(r.i2, 3.0 * r.i1);
  return r;
}

AveragingReport verify_averaging_inequality(const SpaceSpec& space, const CoeffVector& x,
                                            const IndexSet& a, const IndexSet& b, double t,
                                            double k_su_bound, const Tolerance& tol) {
  const IndexSet supp = x.support();
  if (!is_subset(a, supp) || !is_subset(b, supp)) {
    throw Error(ErrorKind::PreconditionViolated, "A and B must lie in supp(x)");
  }
  if (!are_disjoint(a, b)) throw Error(ErrorKind::PreconditionViolated, "A and B overlap");
  double min_abs = std::numeric_limits<double>::infinity();
  std::vector<int> signs;
  for (Index n : a) {
    const double v = x.coeff(n);
    min_abs = std::min(min_abs, std::abs(v));
    signs.push_back(v > 0 ? 1 : -1);
  }
  if (!(t >= 0.0) || t > min_abs) {
    throw Error(ErrorKind::PreconditionViolated, "t must satisfy 0 <= t <= min |x_n| on A");
  }
  AveragingReport r;
  r.lhs = space.norm(project(x, b) + t * indicator(SignedSet(a, signs)));
  r.rhs = k_su_bound * space.norm(x);
  r.pass = tol.leq(r.lhs, r.rhs);
  return r;
}

HarnessReport theorem_harness(const SpaceSpec& space, const InstanceFamily& family,
                              const std::optional<Scope>& scope, const EstimatorOptions& opts) {
  InstanceFamily g = family;
  if (family.greedy_universe != 0) g.universe = family.greedy_universe;

  HarnessReport rep;
  rep.estimates.push_back(estimate_K_su(space, family, opts));
  rep.estimates.push_back(estimate_democracy(space, family, opts));
  rep.estimates.push_back(estimate_quasi_greedy(space, family, opts));
  rep.estimates.push_back(estimate_almost_greedy(space, g, opts));
  rep.estimates.push_back(estimate_greedy_constant(space, g, scope, opts));
  auto dv = estimate_D_variant_constants(space, g, scope, opts);
  rep.estimates.push_back(std::move(dv.vs_d_star));
  rep.estimates.push_back(std::move(dv.vs_d));
  rep.estimates.push_back(estimate_propA(space, family, opts));
  rep.estimates.push_back(estimate_propQ(space, family, opts));
  rep.estimates.push_back(estimate_propQstar(space, family, opts));

  std::map<std::string, double> lb;
  for (const auto& e : rep.estimates) lb[e.name] = e.lower_bound;
  auto relate = [&](const std::string& target, const std::string& statement, double implied) {
    rep.relations.push_back(
        {target, statement, implied, lb[target], opts.tolerance.leq(implied, lb[target])});
  };
  relate(names::kPropQ, "C_Q >= K_su", lb[names::kSuppression]);
  relate(names::kPropQ, "C_Q >= D", lb[names::kDemocracy]);
  relate(names::kPropQStar, "C_Q* >= K_su", lb[names::kSuppression]);
  relate(names::kPropQStar, "C_Q* >= C_A", lb[names::kPropA]);
  relate(names::kGreedy, "C_g >= K_su", lb[names::kSuppression]);
  relate(names::kGreedy, "C_g >= D", lb[names::kDemocracy]);
  relate(names::kGreedy, "C_g >= C_A", lb[names::kPropA]);
  relate(names::kGreedy, "C_g >= sqrt(C_Q*)", std::sqrt(lb[names::kPropQStar]));
  relate(names::kGreedy, "C_g >= C_D*", lb[names::kGreedyVsDStar]);
  relate(names::kGreedyVsDStar, "C_D* >= C_D", lb[names::kGreedyVsD]);
  relate(names::kGreedy, "C_g >= C_ag", lb[names::kAlmostGreedy]);
  relate(names::kSuppression, "K_su >= C_qG", lb[names::kQuasiGreedy]);

  rep.exact_case = space.is_lp();
  if (rep.exact_case) {
    for (const auto& e : rep.estimates) {
      if (std::abs(e.lower_bound - 1.0) > 1e-9) {
        rep.pass = false;
        rep.failures.push_back(e.name + " = " + std::to_string(e.lower_bound));
      }
    }
    rep.verdict = rep.pass ? "exact-case: pass" : "exact-case: fail";
  } else {
    rep.verdict = "lower-bounds: reported";
  }
  return rep;
}

}  // namespace greedylab
