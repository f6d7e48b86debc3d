#include <cmath>
#include <functional>

#include "doctest.h"
#include "greedylab/constants.hpp"
#include "greedylab/error.hpp"

using namespace greedylab;
namespace cn = constant_names;

namespace {

InstanceFamily small(Index n, std::size_t samples = 0) {
  InstanceFamily f;
  f.universe = n;
  f.random_samples = samples;
  return f;
}

std::vector<double> halving(std::size_t n) {
  std::vector<double> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(std::ldexp(1.0, -static_cast<int>(i)));
  return w;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;
}

std::vector<ConstantEstimate> all_estimates(const SpaceSpec& s, const InstanceFamily& f,
                                            const InstanceFamily& g) {
  std::vector<ConstantEstimate> out{estimate_K_su(s, f),          estimate_democracy(s, f),
                                    estimate_quasi_greedy(s, f),  estimate_almost_greedy(s, g),
                                    estimate_greedy_constant(s, g), estimate_propA(s, f),
                                    estimate_propQ(s, f),         estimate_propQstar(s, f)};
  auto dv = estimate_D_variant_constants(s, g);
  out.push_back(dv.vs_d_star);
  out.push_back(dv.vs_d);
  return out;
}

}  // namespace

TEST_CASE("suppression constant") {
  CHECK(estimate_K_su(SpaceSpec::lp(2), small(5, 200)).lower_bound == doctest::Approx(1.0));
  CHECK(estimate_K_su(SpaceSpec::weighted_lp(1, {3, 1, 0.1, 2, 5}), small(5, 200)).lower_bound ==
        doctest::Approx(1.0));

  const auto c0 = SpaceSpec::summing_c0();
  Witness w;
  w.x = CoeffVector::dense({1, -1});
  w.a = SignedSet(IndexSet{1});
  CHECK(reevaluate(c0, cn::kSuppression, w).ratio() == 1.0);
  for (Index k = 1; k <= 5; ++k) {
    std::vector<double> alt;
    IndexSet odd;
    for (Index i = 0; i < 2 * k; ++i) {
      alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
      if (i % 2 == 0) odd.push_back(i + 1);
    }
    w.x = CoeffVector::dense(std::span<const double>(alt));
    w.a = SignedSet(odd);
    CHECK(reevaluate(c0, cn::kSuppression, w).ratio() == static_cast<double>(k));
    CHECK(estimate_K_su(c0, small(2 * k)).lower_bound >= static_cast<double>(k));
  }
}

TEST_CASE("democracy") {
  CHECK(estimate_democracy(SpaceSpec::lp(1.5), small(6)).lower_bound == doctest::Approx(1.0));
  CHECK(estimate_democracy(SpaceSpec::lp(2), small(1)).lower_bound == 1.0);

  InstanceFamily f = small(8);
  const auto s = SpaceSpec::weighted_lp(1, halving(8));
  const auto d = estimate_democracy(s, f);
  REQUIRE(d.parts.size() == 3);
  const auto& k2 = d.parts[1];
  CHECK(k2.name == "k=2");
  CHECK(k2.lower_bound == 64.0);
  CHECK(k2.witness->a.indices() == IndexSet{1, 2});
  CHECK(k2.witness->b.indices() == IndexSet{7, 8});
  CHECK(reevaluate(s, cn::kDemocracy, *k2.witness).ratio() == 64.0);
  CHECK(d.lower_bound >= 64.0);
  CHECK(reevaluate(s, d) == d.lower_bound);
  CHECK(d.parts[2].name == "disjoint");
}

TEST_CASE("quasi-greedy") {
  const auto q = estimate_quasi_greedy(SpaceSpec::lp(3), small(5, 100));
  CHECK(q.lower_bound == doctest::Approx(1.0));
  REQUIRE(q.parts.size() == 2);
  CHECK(q.parts[0].name == "qG1");
  CHECK(q.parts[0].lower_bound == doctest::Approx(1.0));
  CHECK(q.parts[1].lower_bound == doctest::Approx(1.0));

  Witness w;
  w.variant = "qG1";
  w.x = CoeffVector::dense({0.3, -2, 1});
  w.m = 0;
  for (const auto& s : {SpaceSpec::lp(1), SpaceSpec::summing_c0()}) {
    CHECK(reevaluate(s, cn::kQuasiGreedy, w).ratio() == 1.0);
  }
  const auto c = estimate_quasi_greedy(SpaceSpec::summing_c0(), small(4));
  CHECK(c.lower_bound > 1.0);
  CHECK(reevaluate(SpaceSpec::summing_c0(), c) == doctest::Approx(c.lower_bound).epsilon(1e-9));
}

TEST_CASE("greedy constant") {
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(estimate_greedy_constant(SpaceSpec::lp(p), small(4, 50)).lower_bound ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  const auto s = SpaceSpec::weighted_lp(1, halving(4));
  const auto g = estimate_greedy_constant(s, small(4));
  CHECK(g.lower_bound > 1.0);
  CHECK(reevaluate(s, g) == doctest::Approx(g.lower_bound).epsilon(1e-9));
  CHECK(g.witness->m < g.witness->x.support_size());
}

TEST_CASE("D-variant constants") {
  const auto s = SpaceSpec::lp(2);
  const auto dv = estimate_D_variant_constants(s, small(4));
  CHECK(dv.vs_d_star.lower_bound >= 1.0 - 1e-12);
  CHECK(dv.vs_d.lower_bound >= 1.0 - 1e-12);
  CHECK(dv.vs_d.lower_bound <= dv.vs_d_star.lower_bound + 1e-12);

  Witness w;
  w.x = indicator(IndexSet{1, 2, 3, 4});
  w.m = 2;
  const Scope sc = Scope::range(8);
  CHECK(reevaluate(s, cn::kGreedyVsD, w, sc).ratio() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reevaluate(s, cn::kGreedyVsDStar, w, sc).ratio() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kind_of([&] { reevaluate(s, cn::kGreedyVsD, w); }) == ErrorKind::IncompleteSpec);

  const auto c0 = estimate_D_variant_constants(SpaceSpec::summing_c0(), small(4));
  CHECK(reevaluate(SpaceSpec::summing_c0(), c0.vs_d) ==
        doctest::Approx(c0.vs_d.lower_bound).epsilon(1e-9));
  MESSAGE("summing basis: residual/D* >= " << c0.vs_d_star.lower_bound
                                           << ", residual/D >= " << c0.vs_d.lower_bound);
}

TEST_CASE("property (A)") {
  CHECK(estimate_propA(SpaceSpec::lp(2), small(6, 100)).lower_bound == doctest::Approx(1.0));
  Witness w;
  w.x = CoeffVector::dense({0.5, -1});
  CHECK(reevaluate(SpaceSpec::summing_c0(), cn::kPropA, w).ratio() == 1.0);

  const auto s = SpaceSpec::weighted_lp(1, halving(6));
  const auto f = small(6);
  const auto a = estimate_propA(s, f);
  const auto d = estimate_democracy(s, f);
  CHECK(a.lower_bound >= d.parts.back().lower_bound - 1e-12);
}

TEST_CASE("property (Q)") {
  for (double p : {1.0, 2.0}) {
    CHECK(estimate_propQ(SpaceSpec::lp(p), small(5, 100)).lower_bound == doctest::Approx(1.0));
  }
  const auto q = estimate_propQ(SpaceSpec::summing_c0(), small(4, 100));
  CHECK(q.lower_bound > 1.0);
  CHECK(reevaluate(SpaceSpec::summing_c0(), q) == doctest::Approx(q.lower_bound).epsilon(1e-9));
  const auto& w = *q.witness;
  CHECK(are_disjoint(w.x.support(), w.y.support()));
  CHECK(w.x.sup_norm() <= 1.0);
  CHECK(w.a.size() == w.b.size());
}

TEST_CASE("gamma membership") {
  const auto e1 = CoeffVector::sparse({{1, 1.0}});
  const auto e2 = CoeffVector::sparse({{2, 1.0}});
  CHECK(in_gamma(CoeffVector{}, CoeffVector::dense({5, 0.1})));
  CHECK(in_gamma(e1, e2));
  CHECK(!in_gamma(e1, e1));
  CHECK(!in_gamma(CoeffVector::dense({1, 1}), CoeffVector::sparse({{3, 1.0}, {4, 0.5}})));
  CHECK(in_gamma(CoeffVector::dense({0.2, 1}), CoeffVector::sparse({{3, -1.0}, {4, 1.0}})));
}

TEST_CASE("property (Q*)") {
  CHECK(estimate_propQstar(SpaceSpec::lp(3), small(5, 100)).lower_bound == doctest::Approx(1.0));
  Witness w;
  w.z = CoeffVector::sparse({{1, 1.0}});
  w.y = CoeffVector::sparse({{2, 1.0}});
  CHECK(reevaluate(SpaceSpec::lp(2), cn::kPropQStar, w).ratio() == 1.0);
  w.z = {};
  w.y = {};
  w.x = CoeffVector::dense({1, -0.5});
  CHECK(reevaluate(SpaceSpec::summing_c0(), cn::kPropQStar, w).ratio() == 1.0);
}

TEST_CASE("Q* dominates (A) and suppression") {
  std::vector<double> w{1.0, 0.3, 2.0, 0.7, 1.1};
  for (const auto& s : {SpaceSpec::summing_c0(), SpaceSpec::weighted_lp(1, w),
                        SpaceSpec::weighted_lp(2, w)}) {
    const auto f = small(5);
    const double qs = estimate_propQstar(s, f).lower_bound;
    CHECK(qs >= estimate_propA(s, f).lower_bound);
    CHECK(qs >= estimate_K_su(s, f).lower_bound);
  }
}

TEST_CASE("witnesses reevaluate and bounds are at least one") {
  std::vector<double> w{1.0, 0.5, 2.0, 0.25, 1.5};
  for (const auto& s : {SpaceSpec::summing_c0(), SpaceSpec::weighted_lp(1, w),
                        SpaceSpec::hilbert(), SpaceSpec::lp(INFINITY)}) {
    for (const auto& e : all_estimates(s, small(5, 50), small(3, 20))) {
      REQUIRE(e.witness);
      CHECK(reevaluate(s, e) == doctest::Approx(e.lower_bound).epsilon(1e-9));
      if (e.name != cn::kGreedyVsD && e.name != cn::kGreedyVsDStar) {
        CHECK(e.lower_bound >= 1.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("monotone in the family") {
  std::vector<double> w{1.0, 0.5, 2.0, 0.25};
  for (const auto& s : {SpaceSpec::summing_c0(), SpaceSpec::weighted_lp(1, w)}) {
    InstanceFamily f3 = small(3), f4 = small(4), wide = small(3);
    wide.x_grid.push_back(0.75);
    wide.y_grid.push_back(3.0);
    const auto base = all_estimates(s, f3, f3);
    const auto bigger = all_estimates(s, f4, f4);
    const auto wider = all_estimates(s, wide, wide);
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(bigger[i].lower_bound >= base[i].lower_bound - 1e-12);
      CHECK(wider[i].lower_bound >= base[i].lower_bound - 1e-12);
    }
  }
}

TEST_CASE("greedy ratio is scale invariant") {
  const auto s = SpaceSpec::weighted_lp(1, {1.0, 0.2, 0.7, 0.05});
  const auto base = estimate_greedy_constant(s, small(4));
  for (double lambda : {0.5, 3.0}) {
    InstanceFamily f = small(4);
    for (double& v : f.x_grid) v *= lambda;
    const auto scaled = estimate_greedy_constant(s, f);
    CHECK(scaled.lower_bound == doctest::Approx(base.lower_bound).epsilon(1e-9));
    Witness w = *base.witness;
    w.x = lambda * w.x;
    CHECK(reevaluate(s, cn::kGreedy, w, base.index_scope).ratio() ==
          doctest::Approx(base.lower_bound).epsilon(1e-9));
  }
}

TEST_CASE("estimates are deterministic") {
  const auto s = SpaceSpec::summing_c0();
  const auto a = estimate_propQ(s, small(4, 300));
  const auto b = estimate_propQ(s, small(4, 300));
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.witness->x == b.witness->x);
  CHECK(a.evaluated == b.evaluated);
}

TEST_CASE("family errors") {
  CHECK(kind_of([] { estimate_K_su(SpaceSpec::lp(2), small(0)); }) == ErrorKind::EmptyFamily);
  InstanceFamily f = small(3);
  f.x_grid = {0.0};
  CHECK(kind_of([&] { estimate_K_su(SpaceSpec::lp(2), f); }) == ErrorKind::DomainError);
}

TEST_CASE("sup lemma") {
  const auto l2 = SpaceSpec::lp(2);
  const auto r = verify_sup_lemma(l2, CoeffVector{}, {1, 2});
  CHECK(r.i1 == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.i2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.pass());
  const auto c = verify_sup_lemma(SpaceSpec::summing_c0(), CoeffVector{}, {1, 2});
  CHECK(c.i1 == 2.0);
  CHECK(c.i2 == 2.0);
  CHECK(c.pass());
  const auto x = CoeffVector::dense({0.5, -1});
  for (const auto& s : {l2, SpaceSpec::summing_c0()}) {
    const auto e = verify_sup_lemma(s, x, {});
    CHECK(e.i1 == s.norm(x));
    CHECK(e.i2 == s.norm(x));
  }
  CHECK(kind_of([&] { verify_sup_lemma(l2, x, {2, 3}); }) == ErrorKind::DisjointnessViolated);
}

TEST_CASE("averaging inequality") {
  const auto l2 = SpaceSpec::lp(2);
  const auto x = CoeffVector::dense({3, 2, 1});
  const auto r = verify_averaging_inequality(l2, x, {3}, {1}, 0.5, 1.0);
  CHECK(r.lhs == doctest::Approx(std::sqrt(9.25)));
  CHECK(r.rhs == doctest::Approx(std::sqrt(14.0)));
  CHECK(r.pass);
  CHECK(verify_averaging_inequality(l2, x, {2, 3}, {1}, 1.0, 1.0).pass);
  CHECK(kind_of([&] { verify_averaging_inequality(l2, x, {3}, {1}, 1.5, 1.0); }) ==
        ErrorKind::PreconditionViolated);
  CHECK(kind_of([&] { verify_averaging_inequality(l2, x, {1, 3}, {1}, 0.5, 1.0); }) ==
        ErrorKind::PreconditionViolated);
  CHECK(kind_of([&] { verify_averaging_inequality(l2, x, {4}, {}, 0.0, 1.0); }) ==
        ErrorKind::PreconditionViolated);

  const auto c0 = SpaceSpec::summing_c0();
  const auto y = CoeffVector::dense({1, -1, 1, -1});
  const double k = estimate_K_su(c0, small(4)).lower_bound;
  CHECK(verify_averaging_inequality(c0, y, {1, 3}, {}, 1.0, k).pass);
  CHECK(!verify_averaging_inequality(c0, y, {1, 3}, {}, 1.0, 1.0).pass);
}

TEST_CASE("theorem harness") {
  InstanceFamily f = small(4, 50);
  const auto rep = theorem_harness(SpaceSpec::lp(2), f);
  CHECK(rep.exact_case);
  CHECK(rep.pass);
  CHECK(rep.verdict == "exact-case: pass");
  CHECK(rep.estimates.size() == 10);

  const auto w = theorem_harness(SpaceSpec::weighted_lp(1, halving(4)), f);
  CHECK(!w.exact_case);
  CHECK(w.verdict == "lower-bounds: reported");
  double greedy = 0.0, dem = 0.0;
  for (const auto& e : w.estimates) {
    if (e.name == cn::kGreedy) greedy = e.lower_bound;
    if (e.name == cn::kDemocracy) dem = e.lower_bound;
  }
  CHECK(greedy > 1.0);
  CHECK(dem > 1.0);
  CHECK(!w.relations.empty());
}
