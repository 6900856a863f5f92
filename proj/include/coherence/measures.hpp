#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "coherence/majorization.hpp"

namespace coherence {

/// A pure-state coherence functional: symmetric, concave, zero on basis
/// vectors and maximal only at the uniform vector. The built-ins satisfy
/// this by construction; custom functionals are only sampled (see
/// probe_functional).
struct PureCoherenceFunctional {
  enum class Kind { Geometric, RelativeEntropy, L1, Custom };

  Kind kind = Kind::Custom;
  std::string name;
  std::function<double(const CoherenceVector&)> eval;
};

/// 1 - max element.
double eval_geometric(const CoherenceVector& mu);

/// Shannon entropy -sum mu_i log2 mu_i, with 0 log 0 = 0. Units are bits.
double eval_relative_entropy(const CoherenceVector& mu);

/// (sum_i sqrt(mu_i))^2 - 1.
double eval_l1(const CoherenceVector& mu);

PureCoherenceFunctional geometric_functional();
PureCoherenceFunctional relative_entropy_functional();
PureCoherenceFunctional l1_functional();

/// CLI names: geometric | relent | l1. Throws ParseError otherwise.
PureCoherenceFunctional functional_by_name(const std::string& name);

PureCoherenceFunctional custom_functional(std::string name,
                                          std::function<double(const CoherenceVector&)> eval);

struct ProbeReport {
  int trials = 0;
  int symmetry_violations = 0;
  int concavity_violations = 0;
  int endpoint_violations = 0;
  double worst_violation = 0.0;

  int total() const { return symmetry_violations + concavity_violations + endpoint_violations; }
};

/// Samples random vectors, permutations and convex pairs and counts
/// violations of the symmetry / concavity / endpoint conditions. A clean
/// report is evidence, not a proof.
ProbeReport probe_functional(const PureCoherenceFunctional& f, int dim, int trials,
                             std::uint64_t seed);

}  // namespace coherence
