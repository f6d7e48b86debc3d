#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "greedylab/error.hpp"

namespace greedylab {

/// Basis index. Indices are positive; 0 is rejected everywhere.
using Index = std::uint32_t;

/// Sorted, duplicate-free set of basis indices.
using IndexSet = std::vector<Index>;

/// Sorts and deduplicates; throws InvalidVector on a zero index.
IndexSet make_index_set(std::vector<Index> indices);

bool is_subset(const IndexSet& a, const IndexSet& b);
bool are_disjoint(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);

struct Entry {
  Index index = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Finitely supported coefficient sequence with respect to a fixed basis.
///
/// Entries are kept sorted by index and never store an exact zero, so the key
/// set is exactly supp(x). Construction rejects non-finite coefficients.
class CoeffVector {
 public:
  CoeffVector() = default;

  /// Builds from (index, value) pairs in any order. Zero values are dropped;
  /// a repeated index or a non-finite value throws InvalidVector.
  static CoeffVector sparse(std::vector<Entry> entries);
  static CoeffVector sparse(std::initializer_list<Entry> entries) {
    return sparse(std::vector<Entry>(entries));
  }

  /// Coefficients of e_1, e_2, ... in order.
  static CoeffVector dense(std::span<const double> values);
  static CoeffVector dense(std::initializer_list<double> values) {
    return dense(std::span<const double>(values.begin(), values.size()));
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  IndexSet support() const;

  /// e_n^*(x); zero off the support.
  double coeff(Index n) const;

  /// max |coefficient|, 0 for the empty vector.
  double sup_norm() const noexcept;

  /// Largest index in the support, 0 for the empty vector.
  Index max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().index; }

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

  friend CoeffVector operator+(const CoeffVector& a, const CoeffVector& b);
  friend CoeffVector operator-(const CoeffVector& a, const CoeffVector& b);
  friend CoeffVector operator-(const CoeffVector& a);
  friend CoeffVector operator*(double s, const CoeffVector& a);

 private:
  std::vector<Entry> entries_;
};

/// P_A(x): restriction of x to the index set A.
CoeffVector project(const CoeffVector& x, const IndexSet& indices);

/// Finite index set together with a sign on each index; represents 1_{eps A}.
class SignedSet {
 public:
  SignedSet() = default;

  /// All signs +1.
  explicit SignedSet(IndexSet indices);

  /// `signs[i]` belongs to the i-th element of `indices` *as given*; the pair
  /// list is sorted internally. Signs must be +1 or -1.
  SignedSet(std::vector<Index> indices, std::vector<int> signs);

  const IndexSet& indices() const noexcept { return indices_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  int sign_of(Index n) const;

  friend bool operator==(const SignedSet&, const SignedSet&) = default;

 private:
  IndexSet indices_;
  std::vector<int> signs_;
};

/// 1_{eps A} = sum_{n in A} eps_n e_n.
CoeffVector indicator(const SignedSet& set);
/// 1_A.
CoeffVector indicator(const IndexSet& set);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Lp {
  double p = 2.0;  // >= 1 or kInfinity
};

/// ||x|| = (sum_n w_n |x_n|^p)^{1/p}; for p = inf, max_n w_n |x_n|.
/// weights[n - 1] is the weight of e_n.
struct WeightedLp {
  double p = 1.0;
  std::vector<double> weights;
};

struct Hilbert {};

/// max_n |sum_{k <= n} x_k|: the summing basis of c_0, a conditional basis used
/// as a negative control.
struct SummingC0 {};

/// Normed sequence space acting on basis coefficients.
class SpaceSpec {
 public:
  using Kind = std::variant<Lp, WeightedLp, Hilbert, SummingC0>;

  static SpaceSpec lp(double p);
  static SpaceSpec weighted_lp(double p, std::vector<double> weights);
  static SpaceSpec hilbert();
  static SpaceSpec summing_c0();

  const Kind& kind() const noexcept { return kind_; }
  const std::optional<Index>& dim_hint() const noexcept { return dim_hint_; }
  SpaceSpec& with_dim_hint(Index n) {
    dim_hint_ = n;
    return *this;
  }

  /// Coordinate restriction is the nearest point of a coordinate subspace
  /// (Lp, WeightedLp, Hilbert).
  bool is_lattice() const noexcept;

  /// The norm depends on a vector only through the multiset of |coefficients|
  /// (Lp, Hilbert).
  bool is_symmetric() const noexcept;

  bool is_lp() const noexcept { return std::holds_alternative<Lp>(kind_); }

  /// p for Lp / WeightedLp, 2 for Hilbert, nullopt for SummingC0.
  std::optional<double> exponent() const noexcept;

  double norm(const CoeffVector& x) const;

  /// Norm of the vector with coefficient values[i] at indices[i]. Indices must
  /// be strictly increasing; zero values are allowed. This is the hot path for
  /// line searches and enumerations.
  double norm(std::span<const Index> indices, std::span<const double> values) const;

  std::string describe() const;

  friend bool operator==(const SpaceSpec& a, const SpaceSpec& b);

 private:
  explicit SpaceSpec(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
  std::optional<Index> dim_hint_;
};

inline bool operator==(const Lp& a, const Lp& b) { return a.p == b.p; }
inline bool operator==(const WeightedLp& a, const WeightedLp& b) {
  return a.p == b.p && a.weights == b.weights;
}
inline bool operator==(const Hilbert&, const Hilbert&) { return true; }
inline bool operator==(const SummingC0&, const SummingC0&) { return true; }
inline bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
  return a.kind_ == b.kind_ && a.dim_hint_ == b.dim_hint_;
}

/// <x, y> with respect to the orthonormal basis (Hilbert spaces).
double inner(const CoeffVector& x, const CoeffVector& y);

inline double norm(const SpaceSpec& space, const CoeffVector& x) { return space.norm(x); }

/// Comparison tolerance: |a - b| <= abs + rel * max(|a|, |b|).
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  bool close(double a, double b) const;
  bool leq(double a, double b) const;  // a <= b up to tolerance
};

}  // namespace greedylab
