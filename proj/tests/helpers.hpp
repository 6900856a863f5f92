#pragma once

#include <cmath>

#include "coherence/majorization.hpp"
#include "coherence/states.hpp"

namespace coherence::testing {

inline Matrix qubit_matrix(double p00, Complex b) {
  Matrix m(2, 2);
  m << Complex(p00, 0), b, std::conj(b), Complex(1.0 - p00, 0);
  return m;
}

inline DensityMatrix qubit_density(double p00, Complex b) {
  return validate_density(qubit_matrix(p00, b));
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline CoherenceVector probs2(double a, double b) {
  RealVector p(2);
  p << a, b;
  return CoherenceVector::from_probs(p);
}

inline CoherenceVector probs3(double a, double b, double c) {
  RealVector p(3);
  p << a, b, c;
  return CoherenceVector::from_probs(p);
}

inline PureState basis_state(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return validate_pure(v);
}

}  // namespace coherence::testing
