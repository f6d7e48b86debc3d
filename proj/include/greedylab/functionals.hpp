#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "greedylab/line_search.hpp"
#include "greedylab/space.hpp"

namespace greedylab {

/// Finite index universe standing in for N when taking infima over index sets.
///
/// A non-exhaustive scope models an infinite-dimensional space and must leave
/// at least m indices outside supp(x) for D_m / D*_m. An exhaustive scope is
/// the whole (finite-dimensional) space.
struct Scope {
  IndexSet indices;
  bool exhaustive = false;

  static Scope range(Index n, bool exhaustive = false);
  std::size_t size() const noexcept { return indices.size(); }
};

/// Caps on exact enumeration. Beyond them an operation throws CapExceeded
/// instead of sampling.
struct EnumerationLimits {
  std::size_t max_scope = 24;
  std::uint64_t max_enumeration = 10'000'000;
};

struct LineDistance {
  double distance = 0.0;
  double alpha = 0.0;
};

/// d(x, [dir]) = inf_alpha ||x - alpha dir||, by bracketed ternary search on
/// the convex map alpha -> ||x - alpha dir||. The coefficient ratios
/// x_n / dir_n (and 0) are also tried, which makes piecewise-linear norms exact
/// at their kinks. Throws ZeroDirection for dir = 0.
LineDistance line_distance(const SpaceSpec& space, const CoeffVector& x, const CoeffVector& dir,
                           const LineSearchOptions& opts = {});

enum class Exactness {
  Exact,        // exact up to floating point and line-search tolerance
  WithinScope,  // exact infimum over index sets inside the supplied scope
  UpperBound,   // heuristic minimization; true value may be smaller
};

struct FunctionalResult {
  double value = 0.0;
  SignedSet witness_set;      // A (with signs for D*_m; all + for D_m and sigma_m)
  double witness_alpha = 0.0; // D_m / D*_m: minimizing multiple of 1_{eps A}
  CoeffVector approximant;    // the point of the approximating subspace realizing `value`
  std::uint64_t enumeration_count = 0;
  Exactness exactness = Exactness::Exact;
};

/// ||x - approximant|| for a result; reproduces `value` up to rounding.
double reevaluate(const SpaceSpec& space, const CoeffVector& x, const FunctionalResult& r);

enum class SigmaMethod {
  Auto,              // exact method for the space kind
  CoordinateSearch,  // cyclic coordinate search over every |A| = m in scope
};

/// sigma_m(x) = inf { d(x, [e_n : n in A]) : |A| = m, A within scope }.
///
/// Lattice norms: best coordinate restriction, found by enumerating candidate
/// sets inside supp(x) (Hilbert uses the sorted tail). SummingC0: for each A the
/// span of e_A shifts the partial sums by a step function with free heights on
/// the blocks between consecutive elements of A, so the inner minimum is
/// max(prefix sup, half-range of each block) in closed form.
FunctionalResult sigma_m(const SpaceSpec& space, const CoeffVector& x, std::size_t m,
                         const Scope& scope, const EnumerationLimits& limits = {},
                         SigmaMethod method = SigmaMethod::Auto);

/// D_m(x) = inf { d(x, [1_A]) : |A| = m, A within scope }.
FunctionalResult indicator_distance(const SpaceSpec& space, const CoeffVector& x, std::size_t m,
                                    const Scope& scope, const EnumerationLimits& limits = {});

/// D*_m(x) = inf { d(x, [1_{eps A}]) : |A| = m, eps in {+-1}^A, A within scope }.
/// The sign of the smallest index of A is fixed to +1.
FunctionalResult signed_indicator_distance(const SpaceSpec& space, const CoeffVector& x,
                                           std::size_t m, const Scope& scope,
                                           const EnumerationLimits& limits = {});

/// Closed form for an orthonormal basis of a Hilbert space:
///   D_m(x)^2 = ||x||^2 - (1/m) sup_{|A| = m} <x, 1_A>^2
/// (and the signed analogue), with N providing unlimited zero coordinates.
double hilbert_indicator_distance(const CoeffVector& x, std::size_t m, bool is_signed);

}  // namespace greedylab
