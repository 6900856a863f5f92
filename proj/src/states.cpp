#include "coherence/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "coherence/errors.hpp"

namespace coherence {

namespace detail {

std::string magnitude_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

}  // namespace detail

RealVector DensityMatrix::diagonal() const { return m_.diagonal().real(); }

DensityMatrix validate_density(const Matrix& raw, double tol) {
  if (raw.rows() != raw.cols() || raw.rows() < 1) {
    throw DimensionMismatch("density matrix must be square and nonempty");
  }
  const double herm_dev = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol) throw NotHermitian(herm_dev);

  const double trace_dev = std::abs(raw.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol) throw NotUnitTrace(trace_dev);

  const Matrix hermitized = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol) throw NotPSD(min_eig);

  return DensityMatrix(raw);
}

PureState validate_pure(const Vector& raw, double tol) {
  if (raw.size() < 1) throw DimensionMismatch("pure state must be nonempty");
  const double norm_dev = std::abs(raw.squaredNorm() - 1.0);
  if (norm_dev > tol) throw NotNormalized(norm_dev);
  return PureState(raw);
}

double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& sigma) {
  if (psi.dim() != sigma.dim()) {
    throw DimensionMismatch("state dim " + std::to_string(psi.dim()) + " vs matrix dim " +
                            std::to_string(sigma.dim()));
  }
  const Complex value = psi.amplitudes().adjoint() * sigma.matrix() * psi.amplitudes();
  // Imaginary part is Hermiticity noise; discard after checking it is noise.
  if (std::abs(value.imag()) > kTolState) throw NotHermitian(std::abs(value.imag()));
  return std::clamp(value.real(), 0.0, 1.0);
}

Matrix dephase_matrix(const Matrix& m) {
  return m.diagonal().asDiagonal();
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return validate_density(dephase_matrix(rho.matrix()));
}

PureState mcs_state(int dim, const RealVector& phases) {
  if (phases.size() != dim) {
    throw DimensionMismatch("phase vector length " + std::to_string(phases.size()) +
                            " vs dim " + std::to_string(dim));
  }
  Vector amps(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int n = 0; n < dim; ++n) amps(n) = std::polar(scale, phases(n));
  return validate_pure(amps);
}

PureState mcs_state(int dim) { return mcs_state(dim, RealVector::Zero(dim)); }

bool is_incoherent_state(const DensityMatrix& rho, double tol) {
  const Matrix& m = rho.matrix();
  for (int r = 0; r < rho.dim(); ++r) {
    for (int c = 0; c < rho.dim(); ++c) {
      if (r != c && std::abs(m(r, c)) > tol) return false;
    }
  }
  return true;
}

}  // namespace coherence
