#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greedylab/constants.hpp"
#include "greedylab/functionals.hpp"
#include "greedylab/space.hpp"

namespace greedylab {

/// Sizes of the verify suites. Every field is optional in the instance file.
struct VerifySettings {
  std::vector<double> lp_exponents{1.25, 1.5, 2.0, 3.0};
  std::size_t max_n = 6;   // |B| in the l^p indicator and lemma suites
  std::size_t max_m = 10;
  std::size_t l1_max_n = 5;
  std::size_t l1_max_m = 12;
  std::size_t hilbert_samples = 200;
  Index hilbert_dim = 8;
  std::size_t hilbert_max_m = 8;
  std::size_t chain_samples = 500;
  std::size_t sup_lemma_max_set = 4;
  /// Added to every closed-form value before comparison (negative control).
  double closed_form_perturbation = 0.0;

  friend bool operator==(const VerifySettings&, const VerifySettings&) = default;
};

/// Instance document:
///   space:   {kind: lp | weighted_lp | hilbert | summing_c0, p, weights}
///   vectors: {name: [dense values] | {"index": value, ...}}
///   scope:   {universe, exhaustive}
///   family:  {universe, x_grid, y_grid, max_set_size, max_support,
///             random_samples, rng_seed, delta, greedy_universe}
///   verify:  VerifySettings fields
/// Only `space` is required. Unknown fields are rejected.
struct InstanceFile {
  SpaceSpec space = SpaceSpec::lp(2);
  std::vector<std::pair<std::string, CoeffVector>> vectors;  // sorted by name
  std::optional<Scope> scope;
  std::optional<InstanceFamily> family;
  std::optional<VerifySettings> verify;

  const CoeffVector* find(std::string_view name) const;
};

/// Throws Error(ParseError) naming the offending field.
InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::string& path);

/// Canonical JSON form; parse_instance(serialize_instance(i)) reproduces i.
std::string serialize_instance(const InstanceFile& instance);

/// 17 significant digits, '.' decimal point, independent of locale.
std::string format_double(double v);

}  // namespace greedylab
