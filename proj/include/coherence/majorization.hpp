#pragma once

#include <vector>

#include "coherence/states.hpp"

namespace coherence {

/// Probability vector of squared amplitude moduli in the incoherent basis.
/// The sorted flag records whether the entries are known to be in
/// non-increasing order.
class CoherenceVector {
 public:
  static CoherenceVector from_probs(const RealVector& probs, bool sorted = false,
                                    double tol = kTolMajor);

  int dim() const { return static_cast<int>(p_.size()); }
  const RealVector& probs() const { return p_; }
  double operator[](int i) const { return p_(i); }
  bool sorted() const { return sorted_; }

 private:
  CoherenceVector(RealVector p, bool sorted) : p_(std::move(p)), sorted_(sorted) {}
  friend CoherenceVector unchecked_coherence_vector(RealVector, bool);
  RealVector p_;
  bool sorted_;
};

namespace detail {
CoherenceVector make_coherence_vector_unchecked(RealVector probs, bool sorted);
}

struct EnsembleEntry {
  double weight;
  PureState state;
};

/// Weighted list of pure states forming a convex decomposition. Weights are
/// strictly positive and sum to 1.
class Ensemble {
 public:
  static Ensemble from_entries(std::vector<EnsembleEntry> entries, double tol = kTolMajor);

  int dim() const { return entries_.front().state.dim(); }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<EnsembleEntry>& entries() const { return entries_; }

  /// sum_i w_i |phi_i><phi_i|
  Matrix mixture() const;
  bool mixes_to(const DensityMatrix& target, double tol = 1e-8) const;

 private:
  explicit Ensemble(std::vector<EnsembleEntry> entries) : entries_(std::move(entries)) {}
  std::vector<EnsembleEntry> entries_;
};

CoherenceVector coherence_vector(const PureState& psi);

/// Non-increasing rearrangement; ties keep their original order.
CoherenceVector sort_desc(const CoherenceVector& mu);

/// True iff q majorizes p: every prefix sum of q sorted descending dominates
/// the corresponding prefix sum of p, and the totals agree. Vectors of
/// unequal length are compared after zero-padding the shorter one.
bool majorizes(const CoherenceVector& q, const CoherenceVector& p, double tol = kTolMajor);

/// sum_i w_i mu_down(phi_i); the result is itself non-increasing.
CoherenceVector aggregate_vector(const Ensemble& ensemble);

/// The pure state with amplitudes sqrt of the sorted vector, zero phases.
PureState pure_from_vector(const CoherenceVector& mu);

/// Pure-state conversion criterion: psi -> ensemble is possible iff the
/// ensemble aggregate majorizes mu_down(psi).
bool convertible_pure_to_ensemble(const PureState& psi, const Ensemble& ensemble);

}  // namespace coherence
