#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cspw {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  /// First failure, if any.
  std::string detail;
};

/// Small invariant suites at a fixed seed: field axioms, witness operations against enumeration,
/// splitting, solve against brute force, the Vandermonde roundtrip, and gadget identities.
std::vector<SuiteResult> run_selftest(std::uint64_t seed);

}  // namespace cspw
