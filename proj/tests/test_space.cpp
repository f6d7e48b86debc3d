#include <cmath>
#include <limits>

#include "doctest.h"
#include "greedylab/error.hpp"
#include "greedylab/space.hpp"
#include "support.hpp"

using namespace greedylab;

TEST_CASE("norm examples") {
  CHECK(SpaceSpec::lp(2).norm(CoeffVector::dense({3, 2, 1})) == doctest::Approx(std::sqrt(14.0)));
  CHECK(SpaceSpec::lp(1).norm(CoeffVector::dense({1, -1, 1})) == 3.0);
  CHECK(SpaceSpec::summing_c0().norm(CoeffVector::dense({1, -1})) == 1.0);
  CHECK(SpaceSpec::lp(INFINITY).norm(CoeffVector::dense({1, -4, 2})) == 4.0);
  for (const auto& s : testing::sample_spaces(4)) CHECK(s.norm(CoeffVector{}) == 0.0);
}

TEST_CASE("weighted norm") {
  const auto s = SpaceSpec::weighted_lp(1, {1.0, 0.5, 0.25});
  CHECK(s.norm(CoeffVector::dense({1, 1, -1})) == 1.75);
  CHECK_THROWS_AS(s.norm(CoeffVector::sparse({{4, 1.0}})), Error);
  try {
    s.norm(CoeffVector::sparse({{4, 1.0}}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompleteSpec);
  }
  CHECK_THROWS(SpaceSpec::weighted_lp(1, {1.0, 0.0}));
  CHECK_THROWS(SpaceSpec::weighted_lp(1, {1.0, INFINITY}));
  CHECK_THROWS(SpaceSpec::lp(0.5));
}

TEST_CASE("coefficient vector construction") {
  const auto x = CoeffVector::sparse({{3, 0.0}, {2, 5.0}, {1, -1.0}});
  CHECK(x.support() == IndexSet{1, 2});
  CHECK(x.coeff(3) == 0.0);
  CHECK(x.sup_norm() == 5.0);
  CHECK(CoeffVector{}.sup_norm() == 0.0);
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  CHECK(kind_of([] { CoeffVector::dense({1.0, std::nan("")}); }) == ErrorKind::InvalidVector);
  CHECK(kind_of([] { CoeffVector::dense({INFINITY}); }) == ErrorKind::InvalidVector);
  CHECK(kind_of([] { CoeffVector::sparse({{1, 1.0}, {1, 2.0}}); }) == ErrorKind::InvalidVector);
  CHECK(kind_of([] { CoeffVector::sparse({{0, 1.0}}); }) == ErrorKind::InvalidVector);
}

TEST_CASE("project") {
  const auto x = CoeffVector::dense({3, 2, 1});
  CHECK(project(x, {1, 3}) == CoeffVector::dense({3, 0, 1}));
  CHECK(project(x, {}).empty());
  CHECK(project(x, {4}).empty());
}

TEST_CASE("indicator") {
  CHECK(indicator(SignedSet({1, 2}, {1, -1})) == CoeffVector::dense({1, -1}));
  CHECK(indicator(SignedSet{}).empty());
  CHECK(indicator(SignedSet(IndexSet{3})) == CoeffVector::sparse({{3, 1.0}}));
  CHECK(SignedSet({2, 1}, {-1, 1}).sign_of(2) == -1);
  CHECK_THROWS(SignedSet({1}, {0}));
  CHECK_THROWS(SignedSet({1, 1}, {1, 1}));
}

TEST_CASE("triangle inequality and homogeneity") {
  testing::Gen gen(11);
  const Tolerance tol;
  for (const auto& s : testing::sample_spaces(6)) {
    for (int i = 0; i < 200; ++i) {
      const auto x = gen.vector(6, 6);
      const auto y = gen.vector(6, 6);
      CHECK(tol.leq(s.norm(x + y), s.norm(x) + s.norm(y)));
      for (double lambda : {-3.0, -1.0, -0.5, 0.25, 2.0}) {
        CHECK(tol.close(s.norm(lambda * x), std::abs(lambda) * s.norm(x)));
      }
      CHECK(s.norm(x) > 0.0);
    }
  }
}

TEST_CASE("suppression in decoupled norms") {
  testing::Gen gen(12);
  const Tolerance tol;
  for (const auto& s : testing::sample_spaces(6)) {
    if (!s.is_lattice()) continue;
    for (int i = 0; i < 100; ++i) {
      const auto x = gen.vector(6, 6);
      const auto supp = x.support();
      for (std::uint64_t mask = 0; mask < (1u << supp.size()); ++mask) {
        IndexSet a;
        for (std::size_t j = 0; j < supp.size(); ++j)
          if (mask >> j & 1) a.push_back(supp[j]);
        CHECK(tol.leq(s.norm(project(x, a)), s.norm(x)));
      }
    }
  }
}

TEST_CASE("summing basis is not suppression unconditional") {
  const auto s = SpaceSpec::summing_c0();
  const auto x = CoeffVector::dense({1, -1, 1, -1});
  const auto px = project(x, {1, 3});
  CHECK(s.norm(x) == 1.0);
  CHECK(s.norm(px) == 2.0);
}

TEST_CASE("hilbert agrees with l2") {
  testing::Gen gen(13);
  const auto h = SpaceSpec::hilbert();
  const auto l2 = SpaceSpec::lp(2);
  for (int i = 0; i < 500; ++i) {
    const auto x = gen.vector(20, 20);
    const double a = h.norm(x);
    const double b = l2.norm(x);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
  }
}
