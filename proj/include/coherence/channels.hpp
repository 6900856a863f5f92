#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

enum class ChannelClass { CPTP, IO, SIO, MIO, DIO };

std::string to_string(ChannelClass c);

using ClassSet = std::set<ChannelClass>;

/// A finite Kraus-operator channel together with the set of class tags its
/// numeric membership tests certify. Immutable after construction.
///
/// Tag semantics (all at the classification tolerance):
///   CPTP  sum_n K_n^dag K_n = I
///   IO    each Kraus operator has at most one nonzero entry per column
///   SIO   IO condition on columns and rows
///   MIO   channel maps every basis projector to a diagonal matrix
///   DIO   channel commutes with full dephasing on every matrix unit
class QuantumChannel {
 public:
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const ClassSet& classes() const { return classes_; }
  bool has(ChannelClass c) const { return classes_.count(c) > 0; }
  int dim_in() const { return static_cast<int>(kraus_.front().cols()); }
  int dim_out() const { return static_cast<int>(kraus_.front().rows()); }
  int size() const { return static_cast<int>(kraus_.size()); }

 private:
  QuantumChannel(std::vector<Matrix> kraus, ClassSet classes)
      : kraus_(std::move(kraus)), classes_(std::move(classes)) {}
  friend QuantumChannel classify(const std::vector<Matrix>&, double);
  friend QuantumChannel build_n_channel(const QuantumChannel&, const QuantumChannel&,
                                        const QuantumChannel&, int, double);
  std::vector<Matrix> kraus_;
  ClassSet classes_;
};

/// Builds a channel carrying every class tag the numeric tests certify.
/// Throws NotCPTP if the Kraus set is not trace preserving.
QuantumChannel classify(const std::vector<Matrix>& kraus, double tol = kTolChan);

/// sum_n K_n rho K_n^dag, re-validated as a DensityMatrix.
DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);

/// Raw (possibly trace-decreasing) action on an arbitrary matrix.
Matrix apply_matrix(const QuantumChannel& ch, const Matrix& m);

struct InstrumentOutcome {
  double probability;
  DensityMatrix state;
  int index;  // original Kraus index
};

/// Selective measurement outcomes (p_n, K_n rho K_n^dag / p_n). Outcomes
/// with p_n <= tol are dropped.
std::vector<InstrumentOutcome> instrument(const QuantumChannel& ch, const DensityMatrix& rho,
                                          double tol = kTolChan);

/// The preparation channel: Kraus W_j = sqrt(sigma_j) P_j with P_j the
/// cyclic shift by j, so that applying it to |0><0| yields diag(sigma)
/// exactly.
QuantumChannel build_preparation_channel(const RealVector& sigma_diag);

/// The pure state with the same diagonal as rho, zero phases.
PureState canonical_pure_state(const DensityMatrix& rho);

/// A purely dephasing channel (all Kraus operators diagonal) carrying the
/// canonical pure state of rho onto rho. The diagonal amplitude vectors are
/// read off a Hermitian eigenfactorization of the correlation matrix
/// Gamma_mn = rho_mn / sqrt(rho_mm rho_nn); eigenvalues below 1e-12 are
/// dropped. Requires a strictly positive diagonal (restrict to the support
/// of rho first if needed).
QuantumChannel build_dephasing_channel(const DensityMatrix& rho, double tol = kTolChan);

/// One Kraus operator of a channel in strict normal form: entry (perm[c], c)
/// holds amps[c], everything else is zero. Columns whose amplitude vanishes
/// get deterministic filler rows so that perm is a full permutation.
struct SioKrausForm {
  std::vector<int> perm;
  Vector amps;
};

/// Extracts the (amplitude, permutation) normal form of a square channel
/// whose Kraus operators each have at most one nonzero per row and column.
/// Throws NotNormalForm otherwise.
std::vector<SioKrausForm> sio_normal_form(const QuantumChannel& ch, double tol = kTolChan);

/// The diagonal channel T with |d_g^{(i)}|^2 = sum_l |a_g^{(l)}|^2
/// |tau_{pi_l(g)}^{(i)}|^2, built from the normal forms (a, pi) of M and
/// (tau, f) of K. T has one Kraus operator per Kraus operator of K and
/// reproduces the outcome probabilities of K after M on every pure input.
QuantumChannel build_t_channel(const QuantumChannel& m_channel, const QuantumChannel& k_channel,
                               double tol = kTolChan);

/// The channel N^{(i)} with Kraus operators
///   N_l = sum_g (a_g^{(l)} tau_{pi_l(g)}^{(i)} / d_g^{(i)}) |f_i[pi_l(g)]><g|
/// mapping T_i |psi><psi| T_i^dag onto K_i eps_M(|psi><psi|) K_i^dag.
/// Columns with d_g^{(i)} = 0 are dropped (N is then trace preserving only
/// on the retained support and carries no CPTP tag).
QuantumChannel build_n_channel(const QuantumChannel& m_channel, const QuantumChannel& k_channel,
                               const QuantumChannel& t_channel, int outcome,
                               double tol = kTolChan);

/// Seeded random strictly incoherent channel: per-column unit amplitude
/// vectors spread over n_kraus random permutations. Deterministic in seed.
QuantumChannel random_sio(int dim, int n_kraus, std::uint64_t seed);

/// Seeded random incoherent channel; like random_sio but with arbitrary
/// column-to-row maps, so the result need not be strictly incoherent.
QuantumChannel random_io(int dim, int n_kraus, std::uint64_t seed);

}  // namespace coherence
