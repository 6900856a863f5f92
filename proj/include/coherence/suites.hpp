#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coherence {

struct SuiteResult {
  std::string suite;
  int trials = 0;
  int failures = 0;
  double worst_violation = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;

  bool passed() const { return failures == 0; }
};

/// Property-verification suites:
///   prep     preparation channel reproduces random diagonal targets exactly
///   dephase  dephasing construction reproduces random full-rank states
///   lemma3   trace and conversion equalities for random SIO pairs
///   mono     qubit monotonicity under random incoherent channels
///   strong   qubit strong monotonicity under random SIO instruments
///   convex   qubit mixture convexity plus the |b|-profile probe
///   max      only states with |b| = 1/2 reach the qubit maximum
///   probe    built-in functionals pass probe_functional with no violations
/// mono/strong/convex/max are exact closed-form checks and require dim 2.
SuiteResult run_suite(const std::string& name, int dim, int trials, std::uint64_t seed);

const std::vector<std::string>& suite_names();

}  // namespace coherence
