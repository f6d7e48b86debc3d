#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "greedylab/greedy.hpp"
#include "support.hpp"

using namespace greedylab;

TEST_CASE("greedy ordering examples") {
  CHECK(greedy_ordering(CoeffVector::dense({0.5, -2, 1})).order == std::vector<Index>{2, 3, 1});
  CHECK(greedy_ordering(CoeffVector::dense({1, -1, 0.5})).order == std::vector<Index>{1, 2, 3});
  CHECK(greedy_ordering(CoeffVector::sparse({{2, 3.0}, {4, 2.0}})).order ==
        std::vector<Index>{2, 4});
  CHECK(greedy_ordering(CoeffVector{}).order.empty());
}

TEST_CASE("greedy sum examples") {
  const auto x = CoeffVector::dense({3, 2, 1});
  CHECK(greedy_sum(x, 0).empty());
  CHECK(greedy_sum(x, 1) == CoeffVector::dense({3}));
  CHECK(greedy_sum(CoeffVector::dense({1, -1, 0.5}), 1) == CoeffVector::dense({1}));
  CHECK(greedy_sum(x, 5) == x);
}

TEST_CASE("greedy residual examples") {
  const auto x = CoeffVector::dense({3, 2, 1});
  CHECK(greedy_residual_norm(SpaceSpec::lp(2), x, 2) == doctest::Approx(1.0));
  CHECK(greedy_residual_norm(SpaceSpec::lp(1), x, 1) == 3.0);
  for (const auto& s : testing::sample_spaces(3)) {
    CHECK(greedy_residual_norm(s, x, 0) == s.norm(x));
  }
}

TEST_CASE("ordering properties") {
  testing::Gen gen(21);
  for (int i = 0; i < 500; ++i) {
    const auto x = gen.vector(10, 10);
    const auto g = greedy_ordering(x);
    CHECK(g.order == greedy_ordering(x).order);
    auto sorted = g.order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == x.support());
    for (std::size_t j = 1; j < g.order.size(); ++j) {
      const double a = std::abs(x.coeff(g.order[j - 1]));
      const double b = std::abs(x.coeff(g.order[j]));
      CHECK((a > b || (a == b && g.order[j - 1] < g.order[j])));
    }
    for (std::size_t m = 0; m <= x.support_size(); ++m) {
      const auto gm = greedy_sum(x, m);
      CHECK(greedy_sum(gm, m) == gm);
    }
  }
}

TEST_CASE("lp residual is the sorted tail") {
  testing::Gen gen(22);
  for (double p : {1.0, 2.0, 3.0}) {
    const auto s = SpaceSpec::lp(p);
    for (int i = 0; i < 300; ++i) {
      const auto x = gen.vector(10, 10);
      std::vector<double> mags;
      for (const auto& e : x.entries()) mags.push_back(std::abs(e.value));
      std::sort(mags.begin(), mags.end(), std::greater<>());
      for (std::size_t m = 0; m <= mags.size(); ++m) {
        double acc = 0.0;
        for (std::size_t j = m; j < mags.size(); ++j) acc += std::pow(mags[j], p);
        CHECK(greedy_residual_norm(s, x, m) == doctest::Approx(std::pow(acc, 1.0 / p)).epsilon(1e-12));
      }
    }
  }
}
