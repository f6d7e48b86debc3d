#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "greedylab/functionals.hpp"
#include "greedylab/instance.hpp"

namespace greedylab {

struct VerifyOptions {
  std::uint64_t seed = 0;
  Tolerance tolerance{};
  EnumerationLimits limits{};
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::vector<std::string> notes;  // logged observations, never failures
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool pass() const;
  std::string first_failure() const;
  /// Deterministic plain-text report.
  std::string render() const;
};

/// Closed form against oracle suites (lemma, l^p and l^1 indicators, Hilbert),
/// the chain and D_1 suites, sup-lemma and averaging spot checks, and the chain
/// on the instance's own vectors.
VerifyReport run_verify(const InstanceFile& instance, const VerifyOptions& opts = {});

}  // namespace greedylab
