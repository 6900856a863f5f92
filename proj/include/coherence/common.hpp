#pragma once

#include <complex>

#include <Eigen/Dense>

namespace coherence {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerances. State validation and majorization comparisons run at
// 1e-9 (double precision with dim <= 16 leaves ample headroom); channel
// classification is structural and uses a harder 1e-8 threshold so class
// tags stay reproducible.
inline constexpr double kTolState = 1e-9;
inline constexpr double kTolChan = 1e-8;
inline constexpr double kTolMajor = 1e-9;

// Optimization-based estimators refuse larger problems.
inline constexpr int kDimMax = 8;

}  // namespace coherence
