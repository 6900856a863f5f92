#include "coherence/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coherence/errors.hpp"

namespace coherence {

CoherenceVector unchecked_coherence_vector(RealVector probs, bool sorted) {
  return CoherenceVector(std::move(probs), sorted);
}

namespace detail {
CoherenceVector make_coherence_vector_unchecked(RealVector probs, bool sorted) {
  return unchecked_coherence_vector(std::move(probs), sorted);
}
}  // namespace detail

CoherenceVector CoherenceVector::from_probs(const RealVector& probs, bool sorted, double tol) {
  if (probs.size() < 1) throw DimensionMismatch("coherence vector must be nonempty");
  for (int i = 0; i < probs.size(); ++i) {
    if (!(probs(i) >= -tol && probs(i) <= 1.0 + tol)) {
      throw NotProbabilityVector("entry " + std::to_string(i) + " outside [0, 1]");
    }
  }
  const double sum = probs.sum();
  if (std::abs(sum - 1.0) > tol) {
    throw NotProbabilityVector("entries sum to " + std::to_string(sum));
  }
  if (sorted) {
    for (int i = 0; i + 1 < probs.size(); ++i) {
      if (probs(i + 1) > probs(i) + tol) {
        throw NotProbabilityVector("sorted flag set but entries increase at " +
                                   std::to_string(i));
      }
    }
  }
  return CoherenceVector(probs, sorted);
}

Ensemble Ensemble::from_entries(std::vector<EnsembleEntry> entries, double tol) {
  if (entries.empty()) throw DimensionMismatch("ensemble must be nonempty");
  const int dim = entries.front().state.dim();
  double sum = 0.0;
  for (const auto& entry : entries) {
    if (entry.state.dim() != dim) throw DimensionMismatch("ensemble members differ in dim");
    if (!(entry.weight > 0.0 && entry.weight <= 1.0 + tol)) {
      throw NotProbabilityVector("ensemble weight " + std::to_string(entry.weight));
    }
    sum += entry.weight;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw NotProbabilityVector("ensemble weights sum to " + std::to_string(sum));
  }
  return Ensemble(std::move(entries));
}

Matrix Ensemble::mixture() const {
  Matrix mix = Matrix::Zero(dim(), dim());
  for (const auto& entry : entries_) mix += entry.weight * entry.state.projector();
  return mix;
}

bool Ensemble::mixes_to(const DensityMatrix& target, double tol) const {
  if (target.dim() != dim()) return false;
  return (mixture() - target.matrix()).cwiseAbs().maxCoeff() <= tol;
}

CoherenceVector coherence_vector(const PureState& psi) {
  return unchecked_coherence_vector(psi.amplitudes().cwiseAbs2(), false);
}

CoherenceVector sort_desc(const CoherenceVector& mu) {
  if (mu.sorted()) return mu;
  RealVector p = mu.probs();
  std::stable_sort(p.data(), p.data() + p.size(), std::greater<double>());
  return unchecked_coherence_vector(std::move(p), true);
}

bool majorizes(const CoherenceVector& q, const CoherenceVector& p, double tol) {
  const int dim = std::max(q.dim(), p.dim());
  RealVector qs = RealVector::Zero(dim);
  RealVector ps = RealVector::Zero(dim);
  qs.head(q.dim()) = sort_desc(q).probs();
  ps.head(p.dim()) = sort_desc(p).probs();
  double q_prefix = 0.0;
  double p_prefix = 0.0;
  for (int i = 0; i < dim; ++i) {
    q_prefix += qs(i);
    p_prefix += ps(i);
    if (q_prefix < p_prefix - tol) return false;
  }
  return std::abs(q_prefix - p_prefix) <= tol;
}

CoherenceVector aggregate_vector(const Ensemble& ensemble) {
  RealVector agg = RealVector::Zero(ensemble.dim());
  for (const auto& entry : ensemble.entries()) {
    agg += entry.weight * sort_desc(coherence_vector(entry.state)).probs();
  }
  return unchecked_coherence_vector(std::move(agg), true);
}

PureState pure_from_vector(const CoherenceVector& mu) {
  const RealVector sorted = sort_desc(mu).probs();
  Vector amps(sorted.size());
  for (int i = 0; i < sorted.size(); ++i) {
    amps(i) = Complex(std::sqrt(std::max(sorted(i), 0.0)), 0.0);
  }
  return validate_pure(amps);
}

bool convertible_pure_to_ensemble(const PureState& psi, const Ensemble& ensemble) {
  if (psi.dim() != ensemble.dim()) {
    throw DimensionMismatch("pure state dim " + std::to_string(psi.dim()) +
                            " vs ensemble dim " + std::to_string(ensemble.dim()));
  }
  return majorizes(aggregate_vector(ensemble), sort_desc(coherence_vector(psi)));
}

}  // namespace coherence
