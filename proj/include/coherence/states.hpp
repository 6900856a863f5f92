#pragma once

#include "coherence/common.hpp"

namespace coherence {

/// Validated d x d density matrix: Hermitian, unit trace and PSD within the
/// validation tolerance. Immutable after construction; all incoherence
/// statements are relative to the computational basis of the stored array.
class DensityMatrix {
 public:
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// Real parts of the diagonal (a probability vector for a valid state).
  RealVector diagonal() const;

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  friend DensityMatrix validate_density(const Matrix&, double);
  Matrix m_;
};

/// Validated unit-norm pure state.
class PureState {
 public:
  int dim() const { return static_cast<int>(v_.size()); }
  const Vector& amplitudes() const { return v_; }
  Complex operator[](int i) const { return v_(i); }
  Matrix projector() const { return v_ * v_.adjoint(); }

 private:
  explicit PureState(Vector v) : v_(std::move(v)) {}
  friend PureState validate_pure(const Vector&, double);
  Vector v_;
};

/// Checks Hermiticity, unit trace and positivity (in that order) and wraps
/// the raw array. The PSD test diagonalizes the Hermitized matrix
/// (M + M^dag)/2 so it is insensitive to which half carries the noise.
DensityMatrix validate_density(const Matrix& raw, double tol = kTolState);

PureState validate_pure(const Vector& raw, double tol = kTolState);

/// <psi| sigma |psi>, real in [0, 1].
double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& sigma);

/// Full dephasing map: off-diagonals zeroed, diagonal preserved.
DensityMatrix dephase(const DensityMatrix& rho);

/// Zero the off-diagonal entries of a raw matrix.
Matrix dephase_matrix(const Matrix& m);

/// Maximally coherent state (1/sqrt(d)) sum_n e^{i theta_n} |n>.
PureState mcs_state(int dim, const RealVector& phases);
PureState mcs_state(int dim);  // zero phases

/// True iff every off-diagonal modulus is <= tol.
bool is_incoherent_state(const DensityMatrix& rho, double tol = kTolState);

}  // namespace coherence
