#pragma once

#include <stdexcept>
#include <string>

namespace coherence {

struct CoherenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
std::string magnitude_string(double x);
}

// --- state validation ---

struct NotHermitian : CoherenceError {
  explicit NotHermitian(double deviation)
      : CoherenceError("matrix is not Hermitian, max |A - A^dag| = " +
                       detail::magnitude_string(deviation)),
        violation(deviation) {}
  double violation;
};

struct NotUnitTrace : CoherenceError {
  explicit NotUnitTrace(double deviation)
      : CoherenceError("matrix trace differs from 1 by " +
                       detail::magnitude_string(deviation)),
        violation(deviation) {}
  double violation;
};

struct NotPSD : CoherenceError {
  explicit NotPSD(double most_negative)
      : CoherenceError("matrix is not positive semidefinite, lowest eigenvalue " +
                       detail::magnitude_string(-most_negative)),
        violation(-most_negative) {}
  double violation;
};

struct NotNormalized : CoherenceError {
  explicit NotNormalized(double deviation)
      : CoherenceError("vector norm^2 differs from 1 by " +
                       detail::magnitude_string(deviation)),
        violation(deviation) {}
  double violation;
};

struct DimensionMismatch : CoherenceError {
  explicit DimensionMismatch(const std::string& what)
      : CoherenceError("dimension mismatch: " + what) {}
};

struct NotProbabilityVector : CoherenceError {
  explicit NotProbabilityVector(const std::string& what)
      : CoherenceError("not a probability vector: " + what) {}
};

// --- channels ---

struct NotCPTP : CoherenceError {
  explicit NotCPTP(double deficit)
      : CoherenceError("Kraus set is not trace preserving, max |sum K^dag K - I| = " +
                       detail::magnitude_string(deficit)),
        violation(deficit) {}
  double violation;
};

struct SingularDiagonal : CoherenceError {
  SingularDiagonal(int index, double value)
      : CoherenceError("diagonal entry " + std::to_string(index) +
                       " is not strictly positive (" +
                       detail::magnitude_string(value) + ")"),
        index(index) {}
  int index;
};

struct FactorizationFailure : CoherenceError {
  explicit FactorizationFailure(double most_negative)
      : CoherenceError("correlation matrix is not PSD, lowest eigenvalue " +
                       detail::magnitude_string(-most_negative)),
        violation(-most_negative) {}
  double violation;
};

struct NotNormalForm : CoherenceError {
  explicit NotNormalForm(const std::string& what)
      : CoherenceError("Kraus operator is not in one-nonzero-per-column form: " + what) {}
};

struct DivisionByZeroAmplitude : CoherenceError {
  explicit DivisionByZeroAmplitude(int column)
      : CoherenceError("zero reference amplitude at column " + std::to_string(column) +
                       " with nonzero numerator"),
        column(column) {}
  int column;
};

// --- solver ---

struct RankMismatch : CoherenceError {
  RankMismatch(int expected, int got)
      : CoherenceError("decomposition rank " + std::to_string(got) +
                       " does not match state rank " + std::to_string(expected)) {}
};

struct InvalidIsometry : CoherenceError {
  explicit InvalidIsometry(double deviation)
      : CoherenceError("columns are not orthonormal, max |V^dag V - I| = " +
                       detail::magnitude_string(deviation)),
        violation(deviation) {}
  double violation;
};

struct DimensionTooLarge : CoherenceError {
  DimensionTooLarge(int dim, int max)
      : CoherenceError("dimension " + std::to_string(dim) + " exceeds supported maximum " +
                       std::to_string(max)) {}
};

// --- interfaces ---

struct ParseError : CoherenceError {
  explicit ParseError(const std::string& what) : CoherenceError("parse error: " + what) {}
};

struct UnsupportedCombination : CoherenceError {
  explicit UnsupportedCombination(const std::string& what)
      : CoherenceError("unsupported combination: " + what) {}
};

}  // namespace coherence
