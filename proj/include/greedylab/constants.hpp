#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/functionals.hpp"
#include "greedylab/space.hpp"

namespace greedylab {

/// Parameters of the configuration family an estimator searches.
///
/// Free vectors are every vector on [1..universe] with at most `max_support`
/// nonzero coefficients drawn from the grid, every signed indicator 1_{eps A}
/// on the universe, and `random_samples` seeded random draws. Greedy-type
/// estimators also use (1 + delta) perturbations of the grid and sign vectors
/// on every subset of their support.
struct InstanceFamily {
  Index universe = 4;
  std::vector<double> x_grid{1.0, -1.0, 0.5, -0.5};
  std::vector<double> y_grid{0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
  std::size_t max_set_size = 2;
  std::size_t max_support = 3;
  std::size_t random_samples = 1000;
  std::uint64_t rng_seed = 0;
  double delta = 1e-6;
  /// Universe used by the greedy, almost-greedy and D-variant estimators in
  /// the harness (0 means `universe`).
  Index greedy_universe = 0;

  /// Throws DomainError for an empty universe, non-finite or zero grid
  /// values, or delta <= 0.
  void validate() const;
  bool exhaustive() const noexcept { return random_samples == 0 && max_support >= universe; }
};

namespace constant_names {
inline constexpr const char* kSuppression = "K_su";
inline constexpr const char* kDemocracy = "Democracy";
inline constexpr const char* kQuasiGreedy = "QuasiGreedy";
inline constexpr const char* kAlmostGreedy = "AlmostGreedy";
inline constexpr const char* kGreedy = "Greedy";
inline constexpr const char* kGreedyVsDStar = "GreedyVsDStar";
inline constexpr const char* kGreedyVsD = "GreedyVsD";
inline constexpr const char* kPropA = "PropA";
inline constexpr const char* kPropQ = "PropQ";
inline constexpr const char* kPropQStar = "PropQstar";
}  // namespace constant_names

/// A configuration realizing a ratio. Unused fields stay empty.
struct Witness {
  std::string variant;  // which ratio of the estimator
  std::string origin;   // grid | sign | perturbed | random | embedded
  CoeffVector x, y, z;
  SignedSet a, b;
  std::size_t m = 0;
  double numerator = 0.0;
  double denominator = 0.0;

  double ratio() const { return numerator / denominator; }
};

struct ConstantEstimate {
  std::string name;
  std::string variant;       // ratio evaluated by the witness (see reevaluate)
  double lower_bound = 0.0;  // 0 if no configuration had a usable denominator
  std::optional<Witness> witness;
  std::vector<ConstantEstimate> parts;
  std::string method;  // exhaustive | grid | random (origin class of the witness)
  InstanceFamily family;
  std::optional<Scope> index_scope;  // sigma_m / D_m scope for greedy-type estimators
  std::uint64_t evaluated = 0;
  std::uint64_t segregated = 0;  // denominators at or below the cutoff
  std::vector<Witness> unbounded;  // denominator ~ 0 but numerator > tolerance
};

struct EstimatorOptions {
  double denominator_cutoff = 1e-12;
  Tolerance tolerance{};
  EnumerationLimits limits{};
};

ConstantEstimate estimate_K_su(const SpaceSpec& space, const InstanceFamily& family,
                               const EstimatorOptions& opts = {});

/// max ||1_A|| / ||1_B|| over |A| = |B| = k <= max_set_size. Parts: one per k,
/// and "disjoint" for the pairs with A and B disjoint.
ConstantEstimate estimate_democracy(const SpaceSpec& space, const InstanceFamily& family,
                                    const EstimatorOptions& opts = {});

/// Parts "qG1" (||x - G_m x|| / ||x||) and "qG2" (||G_m x|| / ||x||).
ConstantEstimate estimate_quasi_greedy(const SpaceSpec& space, const InstanceFamily& family,
                                       const EstimatorOptions& opts = {});

/// ||x - G_m x|| / inf_{|A| = m} ||x - P_A x||.
ConstantEstimate estimate_almost_greedy(const SpaceSpec& space, const InstanceFamily& family,
                                        const EstimatorOptions& opts = {});

/// ||x - G_m x|| / sigma_m(x). Default scope: the universe, exhaustive.
ConstantEstimate estimate_greedy_constant(const SpaceSpec& space, const InstanceFamily& family,
                                          const std::optional<Scope>& scope = std::nullopt,
                                          const EstimatorOptions& opts = {});

struct DVariantEstimates {
  ConstantEstimate vs_d_star;  // ||x - G_m x|| / D*_m(x)
  ConstantEstimate vs_d;       // ||x - G_m x|| / D_m(x)
};

DVariantEstimates estimate_D_variant_constants(const SpaceSpec& space,
                                               const InstanceFamily& family,
                                               const std::optional<Scope>& scope = std::nullopt,
                                               const EstimatorOptions& opts = {});

/// ||x + 1_{eps A}|| / ||x + 1_{eps' B}||, A and B disjoint of equal size,
/// supp(x) disjoint from A u B, |x_n| <= 1.
ConstantEstimate estimate_propA(const SpaceSpec& space, const InstanceFamily& family,
                                const EstimatorOptions& opts = {});

/// ||x + 1_A|| / ||x + y + 1_B||, A and B disjoint of equal size, xy = 0,
/// |x_n| <= 1, supp(x + y) disjoint from A u B. Includes the suppression
/// configurations (A = B = empty).
ConstantEstimate estimate_propQ(const SpaceSpec& space, const InstanceFamily& family,
                                const EstimatorOptions& opts = {});

/// ||x + z|| / ||x + y|| over pairwise disjoint x, z, y with |x_n|, |z_n| <= 1
/// and y in Gamma_z. Includes the Property (A) and suppression configurations.
ConstantEstimate estimate_propQstar(const SpaceSpec& space, const InstanceFamily& family,
                                    const EstimatorOptions& opts = {});

/// y in Gamma_z: zy = 0 and |supp z| <= #{n : |y_n| = 1}; every y when z = 0.
bool in_gamma(const CoeffVector& z, const CoeffVector& y);

/// Numerator and denominator recomputed from a witness of the named estimator.
Witness reevaluate(const SpaceSpec& space, const std::string& name, const Witness& w,
                   const std::optional<Scope>& index_scope = std::nullopt,
                   const EnumerationLimits& limits = {});

/// Ratio recomputed from the estimate's witness (0 without a witness).
double reevaluate(const SpaceSpec& space, const ConstantEstimate& e,
                  const EnumerationLimits& limits = {});

struct SupLemmaReport {
  double i1 = 0.0;  // max over B in A of ||x + 1_B||
  double i2 = 0.0;  // max over eps of ||x + 1_{eps A}||
  double i3 = 0.0;  // max over sampled u, |u_n| <= 1 on A, of ||x + u||
  std::size_t samples = 0;
  bool i1_le_i2 = false;
  bool i3_le_i2 = false;
  bool i2_le_3i1 = false;
  bool pass() const { return i1_le_i2 && i3_le_i2 && i2_le_3i1; }
};

/// Throws DisjointnessViolated if A meets supp(x).
SupLemmaReport verify_sup_lemma(const SpaceSpec& space, const CoeffVector& x, const IndexSet& a,
                                std::size_t samples = 64, std::uint64_t seed = 0,
                                const Tolerance& tol = {});

struct AveragingReport {
  double lhs = 0.0;  // ||P_B x + t 1_{eps A}||, eps = sign(x) on A
  double rhs = 0.0;  // K ||x||
  bool pass = false;
};

/// Requires A in supp(x), B in supp(x) \ A and 0 <= t <= min_{n in A} |x_n|;
/// otherwise PreconditionViolated.
AveragingReport verify_averaging_inequality(const SpaceSpec& space, const CoeffVector& x,
                                            const IndexSet& a, const IndexSet& b, double t,
                                            double k_su_bound, const Tolerance& tol = {});

struct Relation {
  std::string target;     // constant bounded from below
  std::string statement;  // e.g. "C_g >= K_su"
  double implied = 0.0;   // lower bound implied by the other estimates
  double estimate = 0.0;  // the target's own estimate
  bool consistent = false;
};

struct HarnessReport {
  std::vector<ConstantEstimate> estimates;
  std::vector<Relation> relations;
  bool exact_case = false;  // canonical basis of l^p: every constant equals 1
  bool pass = true;         // only meaningful in the exact case
  std::vector<std::string> failures;
  std::string verdict;  // "exact-case: pass", "exact-case: fail" or "lower-bounds: reported"
};

/// Runs every estimator. Greedy-type estimators use `greedy_universe`.
HarnessReport theorem_harness(const SpaceSpec& space, const InstanceFamily& family,
                              const std::optional<Scope>& scope = std::nullopt,
                              const EstimatorOptions& opts = {});

}  // namespace greedylab
