#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frobcoord::selftest {

inline constexpr std::uint64_t kDefaultSeed = 20160601;

struct Options {
  std::size_t max_dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = kDefaultSeed;
  /// Negative control: flips the first entry of every merging tensor the
  /// suites build, which must make them fail.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::optional<std::string> counterexample;  // first failure only

  bool ok() const { return passed == total; }
};

SuiteResult frobenius_axioms(const Options& opts);
SuiteResult snake_equations(const Options& opts);
SuiteResult coordinator_equivalence(const Options& opts);
SuiteResult sentence_identities(const Options& opts);
SuiteResult subject_copying(const Options& opts);
SuiteResult stripping_equality(const Options& opts);
SuiteResult rel_intersection(const Options& opts);
SuiteResult contraction_order(const Options& opts);

/// Every suite above, in that order.
std::vector<SuiteResult> run_all(const Options& opts);

}  // namespace frobcoord::selftest
