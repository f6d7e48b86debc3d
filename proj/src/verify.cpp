#include "greedylab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "greedylab/closedform.hpp"
#include "greedylab/constants.hpp"
#include "greedylab/greedy.hpp"

namespace greedylab {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { r_.name = std::move(name); }

  template <typename Describe>
  void check(bool ok, Describe&& describe) {
    ++r_.cases;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = r_.name + ": " + describe();
  }
  void note(std::string s) { r_.notes.push_back(std::move(s)); }
  SuiteResult done() { return std::move(r_); }

 private:
  SuiteResult r_;
};

std::string fmt(double v) { return format_double(v); }

class Draw {
 public:
  Draw(std::uint64_t seed, std::uint64_t stream) : g_(seed * 0x9E3779B97F4A7C15ULL + stream) {}
  std::size_t below(std::size_t k) { return static_cast<std::size_t>(g_() % k); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(g_() >> 11) * 0x1.0p-53);
  }
  CoeffVector vector(Index dim, std::size_t max_support) {
    static constexpr double grid[] = {1.0, -1.0, 0.5, -0.5, 2.0};
    std::vector<Index> pool(dim);
    for (Index i = 0; i < dim; ++i) pool[i] = i + 1;
    const std::size_t k = 1 + below(std::min<std::size_t>(max_support, dim));
    std::vector<Entry> e;
    for (std::size_t j = 0; j < k; ++j) {
      std::swap(pool[j], pool[j + below(dim - j)]);
      double v = below(3) == 0 ? grid[below(5)] : uniform(-3.0, 3.0);
      e.push_back({pool[j], v == 0.0 ? 1.0 : v});
    }
    return CoeffVector::sparse(std::move(e));
  }

 private:
  std::mt19937_64 g_;
};

IndexSet first_n(std::size_t n) { return Scope::range(static_cast<Index>(n)).indices; }

std::vector<SpaceSpec> standard_spaces(const InstanceFile& inst) {
  std::vector<double> w;
  for (int i = 0; i < 16; ++i) w.push_back(1.0 / (1.0 + 0.5 * i));
  std::vector<SpaceSpec> s{SpaceSpec::lp(1),           SpaceSpec::lp(1.5),
                           SpaceSpec::lp(2),           SpaceSpec::lp(3),
                           SpaceSpec::lp(INFINITY),    SpaceSpec::weighted_lp(1, w),
                           SpaceSpec::weighted_lp(2, w), SpaceSpec::hilbert(),
                           SpaceSpec::summing_c0()};
  if (std::find(s.begin(), s.end(), inst.space) == s.end()) s.push_back(inst.space);
  return s;
}

SuiteResult lemma_suite(const VerifySettings& v, const VerifyOptions& o) {
  Suite s("lemma");
  for (double p : v.lp_exponents) {
    for (std::size_t n = 1; n <= v.max_n; ++n) {
      for (std::size_t m = n; m <= v.max_m; ++m) {
        const double cf = lemma_min(p, m, n) + v.closed_form_perturbation;
        const auto bf = lemma_min_bruteforce(p, m, n);
        const auto where = "p=" + fmt(p) + " N=" + std::to_string(n) + " m=" + std::to_string(m);
        s.check(std::abs(cf - bf.value) <= o.tolerance.abs,
                [&] { return where + ": closed form " + fmt(cf) + " vs brute force " + fmt(bf.value); });
        s.check(std::abs(bf.h_min - bf.l_min) <= o.tolerance.abs && bf.l_min >= bf.h_min - o.tolerance.abs,
                [&] { return where + ": H-min " + fmt(bf.h_min) + " vs L-min " + fmt(bf.l_min); });
        if (m == n) {
          s.check(cf == 0.0, [&] { return where + ": boundary value " + fmt(cf); });
        }
      }
    }
  }
  return s.done();
}

SuiteResult lp_indicator_suite(const VerifySettings& v, const VerifyOptions& o) {
  Suite s("lp_indicator");
  for (double p : v.lp_exponents) {
    const auto space = SpaceSpec::lp(p);
    for (std::size_t n = 1; n <= v.max_n; ++n) {
      const auto x = indicator(first_n(n));
      for (std::size_t m = 1; m <= v.max_m; ++m) {
        const auto scope = Scope::range(static_cast<Index>(n + m));
        const double cf = lp_indicator_distance({p, n, m}) + v.closed_form_perturbation;
        const double d = indicator_distance(space, x, m, scope, o.limits).value;
        const double ds = signed_indicator_distance(space, x, m, scope, o.limits).value;
        const auto where = "p=" + fmt(p) + " N=" + std::to_string(n) + " m=" + std::to_string(m);
        s.check(std::abs(cf - d) <= o.tolerance.abs,
                [&] { return where + ": closed form " + fmt(cf) + " vs D " + fmt(d); });
        s.check(std::abs(cf - ds) <= o.tolerance.abs,
                [&] { return where + ": closed form " + fmt(cf) + " vs D* " + fmt(ds); });
      }
    }
  }
  return s.done();
}

SuiteResult l1_indicator_suite(const VerifySettings& v, const VerifyOptions& o) {
  Suite s("l1_indicator");
  const auto space = SpaceSpec::lp(1);
  std::size_t signed_differs = 0;
  for (std::size_t n = 1; n <= v.l1_max_n; ++n) {
    const auto x = indicator(first_n(n));
    for (std::size_t m = 1; m <= v.l1_max_m; ++m) {
      const auto scope = Scope::range(static_cast<Index>(n + m));
      const double cf = l1_indicator_distance(n, m) + v.closed_form_perturbation;
      const double d = indicator_distance(space, x, m, scope, o.limits).value;
      s.check(d == cf, [&] {
        return "N=" + std::to_string(n) + " m=" + std::to_string(m) + ": closed form " + fmt(cf) +
               " vs D " + fmt(d);
      });
      const double ds = signed_indicator_distance(space, x, m, scope, o.limits).value;
      if (std::abs(ds - d) > o.tolerance.abs) ++signed_differs;
    }
  }
  s.note("D* differs from D on " + std::to_string(signed_differs) + " cases");
  return s.done();
}

SuiteResult hilbert_suite(const VerifySettings& v, const VerifyOptions& o) {
  Suite s("hilbert");
  const auto space = SpaceSpec::hilbert();
  Draw draw(o.seed, 1);
  for (std::size_t i = 0; i < v.hilbert_samples; ++i) {
    const auto x = draw.vector(v.hilbert_dim, v.hilbert_dim);
    const std::size_t m = 1 + draw.below(v.hilbert_max_m);
    const auto scope = Scope::range(static_cast<Index>(v.hilbert_dim + m));
    const double norm = space.norm(x);
    for (bool sg : {false, true}) {
      const double cf = hilbert_indicator_distance(x, m, sg) + v.closed_form_perturbation;
      const double orc = sg ? signed_indicator_distance(space, x, m, scope, o.limits).value
                            : indicator_distance(space, x, m, scope, o.limits).value;
      s.check(std::abs(cf - orc) <= 1e-8, [&] {
        return "sample " + std::to_string(i) + " m=" + std::to_string(m) + (sg ? " signed" : "") +
               ": closed form " + fmt(cf) + " vs oracle " + fmt(orc);
      });
      if (sg && x.support_size() <= m) {
        const double lower = norm * std::sqrt(1.0 - static_cast<double>(x.support_size()) / m);
        s.check(o.tolerance.leq(lower, orc) && o.tolerance.leq(orc, norm), [&] {
          return "sample " + std::to_string(i) + " m=" + std::to_string(m) + ": D* " + fmt(orc) +
                 " outside [" + fmt(lower) + ", " + fmt(norm) + "]";
        });
      }
    }
  }
  return s.done();
}

SuiteResult chain_suite(const InstanceFile& inst, const VerifySettings& v, const VerifyOptions& o) {
  Suite s("chain");
  const auto spaces = standard_spaces(inst);
  Draw draw(o.seed, 2);
  for (std::size_t i = 0; i < v.chain_samples; ++i) {
    const auto& space = spaces[i % spaces.size()];
    const Index dim = static_cast<Index>(2 + draw.below(5));
    const auto x = draw.vector(dim, dim);
    const std::size_t m = 1 + draw.below(3);
    Scope scope = Scope::range(dim + static_cast<Index>(m), !space.is_symmetric());
    if (const auto* w = std::get_if<WeightedLp>(&space.kind())) {
      if (w->weights.size() < scope.size()) continue;
    }
    const auto sg = sigma_m(space, x, m, scope, o.limits);
    const auto ds = signed_indicator_distance(space, x, m, scope, o.limits);
    const auto d = indicator_distance(space, x, m, scope, o.limits);
    const double norm = space.norm(x);
    const auto& tol = o.tolerance;
    s.check(tol.leq(sg.value, ds.value) && tol.leq(ds.value, d.value) && tol.leq(d.value, norm), [&] {
      return space.describe() + " sample " + std::to_string(i) + " m=" + std::to_string(m) +
             ": sigma " + fmt(sg.value) + ", D* " + fmt(ds.value) + ", D " + fmt(d.value) +
             ", norm " + fmt(norm);
    });
    for (const auto* r : {&sg, &ds, &d}) {
      const double re = reevaluate(space, x, *r);
      s.check(tol.close(re, r->value), [&] {
        return space.describe() + " sample " + std::to_string(i) + ": witness gives " + fmt(re) +
               " not " + fmt(r->value);
      });
    }
  }
  return s.done();
}

SuiteResult d1_suite(const VerifySettings& v, const VerifyOptions& o) {
  Suite s("d1_identity");
  const std::vector<SpaceSpec> spaces{SpaceSpec::lp(1.5), SpaceSpec::lp(2), SpaceSpec::lp(3),
                                      SpaceSpec::hilbert()};
  Draw draw(o.seed, 3);
  const std::size_t samples = std::max<std::size_t>(1, v.chain_samples / 5);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& space = spaces[i % spaces.size()];
    const auto x = draw.vector(6, 6);
    const auto scope = Scope::range(7);
    const double g = greedy_residual_norm(space, x, 1);
    const double d = indicator_distance(space, x, 1, scope, o.limits).value;
    const double ds = signed_indicator_distance(space, x, 1, scope, o.limits).value;
    s.check(std::abs(d - g) <= o.tolerance.abs && std::abs(ds - g) <= o.tolerance.abs, [&] {
      return space.describe() + " sample " + std::to_string(i) + ": D_1 " + fmt(d) + ", D*_1 " +
             fmt(ds) + ", residual " + fmt(g);
    });
  }
  return s.done();
}

SuiteResult sup_lemma_suite(const InstanceFile& inst, const VerifySettings& v,
                            const VerifyOptions& o) {
  Suite s("sup_lemma");
  const IndexSet u = first_n(6);
  const std::vector<double> grid{1.0, -1.0, 0.5, -0.5};
  for (const auto& space : standard_spaces(inst)) {
    if (const auto* w = std::get_if<WeightedLp>(&space.kind())) {
      if (w->weights.size() < u.size()) continue;
    }
    std::uint64_t seed = o.seed;
    for (std::uint64_t amask = 0; amask < (1u << u.size()); ++amask) {
      IndexSet a, rest;
      for (std::size_t j = 0; j < u.size(); ++j) (amask >> j & 1 ? a : rest).push_back(u[j]);
      if (a.size() > v.sup_lemma_max_set) continue;
      // x with at most two coefficients from the grid on the complement of A.
      std::vector<CoeffVector> xs{CoeffVector{}};
      for (std::size_t i = 0; i < rest.size(); ++i) {
        for (double vi : grid) {
          xs.push_back(CoeffVector::sparse({{rest[i], vi}}));
          for (std::size_t j = i + 1; j < rest.size(); ++j)
            for (double vj : grid) xs.push_back(CoeffVector::sparse({{rest[i], vi}, {rest[j], vj}}));
        }
      }
      for (const auto& x : xs) {
        const auto r = verify_sup_lemma(space, x, a, 16, ++seed, o.tolerance);
        s.check(r.pass(), [&] {
          return space.describe() + " |A|=" + std::to_string(a.size()) + ": I1 " + fmt(r.i1) +
                 ", I2 " + fmt(r.i2) + ", I3 " + fmt(r.i3);
        });
      }
    }
  }
  return s.done();
}

SuiteResult averaging_suite(const InstanceFile& inst, const VerifyOptions& o) {
  Suite s("averaging");
  const IndexSet u = first_n(4);
  const std::vector<double> grid{1.0, -1.0, 0.5, -2.0};
  std::size_t summing_violations = 0;
  for (const auto& space : standard_spaces(inst)) {
    if (const auto* w = std::get_if<WeightedLp>(&space.kind())) {
      if (w->weights.size() < u.size()) continue;
    }
    // Lattice norms are 1-suppression unconditional; the summing basis is
    // checked against its estimated constant and only logged.
    double k = 1.0;
    if (!space.is_lattice()) {
      InstanceFamily f;
      f.universe = 4;
      f.random_samples = 0;
      k = estimate_K_su(space, f).lower_bound;
    }
    std::vector<double> vals(u.size());
    std::size_t digits = grid.size() + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < u.size(); ++i) total *= digits;
    for (std::size_t code = 1; code < total; ++code) {
      std::vector<Entry> e;
      std::size_t c = code;
      for (std::size_t i = 0; i < u.size(); ++i, c /= digits) {
        if (c % digits) e.push_back({u[i], grid[c % digits - 1]});
      }
      const auto x = CoeffVector::sparse(e);
      const IndexSet supp = x.support();
      for (std::uint64_t mask = 0; mask < std::pow(3, supp.size()); ++mask) {
        IndexSet a, b;
        std::uint64_t t = mask;
        for (std::size_t j = 0; j < supp.size(); ++j, t /= 3) {
          if (t % 3 == 1) a.push_back(supp[j]);
          if (t % 3 == 2) b.push_back(supp[j]);
        }
        double mn = INFINITY;
        for (Index n : a) mn = std::min(mn, std::abs(x.coeff(n)));
        for (double tt : {0.0, 0.5 * mn, mn}) {
          if (!std::isfinite(tt)) tt = 1.0;
          const auto r = verify_averaging_inequality(space, x, a, b, tt, k, o.tolerance);
          if (space.is_lattice()) {
            s.check(r.pass, [&] {
              return space.describe() + ": lhs " + fmt(r.lhs) + " > " + fmt(r.rhs);
            });
          } else if (!r.pass) {
            ++summing_violations;
          }
        }
      }
    }
  }
  s.note("summing basis violations of the estimated bound: " + std::to_string(summing_violations));
  return s.done();
}

SuiteResult instance_suite(const InstanceFile& inst, const VerifyOptions& o) {
  Suite s("instance_vectors");
  for (const auto& [name, x] : inst.vectors) {
    for (std::size_t m = 1; m <= x.support_size(); ++m) {
      Scope scope;
      if (inst.scope) {
        scope = *inst.scope;
      } else if (const auto* w = std::get_if<WeightedLp>(&inst.space.kind())) {
        scope = Scope::range(static_cast<Index>(w->weights.size()), true);
      } else {
        scope = Scope::range(x.max_index() + static_cast<Index>(m));
      }
      const double sg = sigma_m(inst.space, x, m, scope, o.limits).value;
      const double ds = signed_indicator_distance(inst.space, x, m, scope, o.limits).value;
      const double d = indicator_distance(inst.space, x, m, scope, o.limits).value;
      const double norm = inst.space.norm(x);
      const auto& tol = o.tolerance;
      s.check(tol.leq(sg, ds) && tol.leq(ds, d) && tol.leq(d, norm), [&] {
        return name + " m=" + std::to_string(m) + ": sigma " + fmt(sg) + ", D* " + fmt(ds) +
               ", D " + fmt(d) + ", norm " + fmt(norm);
      });
    }
  }
  return s.done();
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.failures == 0; });
}

std::string VerifyReport::first_failure() const {
  for (const auto& s : suites)
    if (s.failures) return s.first_failure;
  return {};
}

std::string VerifyReport::render() const {
  std::ostringstream os;
  std::size_t cases = 0, failures = 0;
  os << "verify seed=" << seed << "\n";
  for (const auto& s : suites) {
    os << "suite " << s.name << ": cases=" << s.cases << " failures=" << s.failures << "\n";
    if (s.failures) os << "  first failure: " << s.first_failure << "\n";
    for (const auto& n : s.notes) os << "  note: " << n << "\n";
    cases += s.cases;
    failures += s.failures;
  }
  os << "total: suites=" << suites.size() << " cases=" << cases << " failures=" << failures << "\n";
  os << "result: " << (failures == 0 ? "pass" : "fail") << "\n";
  return os.str();
}

VerifyReport run_verify(const InstanceFile& inst, const VerifyOptions& opts) {
  const VerifySettings v = inst.verify.value_or(VerifySettings{});
  VerifyReport rep;
  rep.seed = opts.seed;
  rep.suites.push_back(lemma_suite(v, opts));
  rep.suites.push_back(lp_indicator_suite(v, opts));
  rep.suites.push_back(l1_indicator_suite(v, opts));
  rep.suites.push_back(hilbert_suite(v, opts));
  rep.suites.push_back(chain_suite(inst, v, opts));
  rep.suites.push_back(d1_suite(v, opts));
  rep.suites.push_back(sup_lemma_suite(inst, v, opts));
  rep.suites.push_back(averaging_suite(inst, opts));
  rep.suites.push_back(instance_suite(inst, opts));
  return rep;
}

}  // namespace greedylab
