#pragma once

#include <cstdint>
#include <string>

#include "coherence/channels.hpp"
#include "coherence/measures.hpp"

namespace coherence {

/// Parametrizes a size-k decomposition of a rank-r state: the unnormalized
/// members are |phi_i> = sum_a V_ia sqrt(lambda_a) |e_a> over the
/// eigenpairs of rho, for any k x r matrix V with orthonormal columns.
struct DecompositionParam {
  int rank = 0;
  int size = 0;
  Matrix isometry;  // size x rank, V^dag V = I
};

Ensemble decomposition_from_isometry(const DensityMatrix& rho, const DecompositionParam& param);

struct SolveOptions {
  int restarts = 32;
  int max_iters = 2000;
  int stall_iters = 200;       // stop a restart once the best value has not
  double improve_tol = 1e-9;   // improved by improve_tol for this many iters
  int k_min = 0;               // 0 = rank(rho)
  int k_max = 0;               // 0 = dim^2
  std::uint64_t seed = 0;
};

struct SolveReport {
  double value;
  Ensemble best_ensemble;
  CoherenceVector best_mu;
  int restarts_used;
  bool converged;
  std::string method;
};

/// Upper bound on the conversion monotone: the least f(aggregate) over all
/// sampled and locally optimized decompositions. The realizing pure state is
/// pure_from_vector(best_mu).
SolveReport cm_estimate(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                        const SolveOptions& opts = {});

/// Upper bound on the convex-roof value: the least sum_i p_i f(mu_down_i)
/// over the same decomposition family.
SolveReport cf_estimate(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                        const SolveOptions& opts = {});

/// Both estimates from one shared candidate pool: every candidate visited by
/// either descent is scored under both objectives, so cm.value >= cf.value
/// holds by construction (f is concave).
struct SolvePair {
  SolveReport cm;
  SolveReport cf;
};

SolvePair estimate_pair(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                        const SolveOptions& opts = {});

/// The optimal qubit decomposition sigma = lambda sigma_plus + (1-lambda)
/// sigma_minus into the two pure states with coherence vectors
/// ((1 +- z)/2, (1 -+ z)/2), z = sqrt(1 - 4|b|^2), both carrying the
/// off-diagonal b of sigma exactly.
struct QubitDecomposition {
  double lambda;
  PureState plus;
  PureState minus;
};

QubitDecomposition qubit_optimal_decomposition(const DensityMatrix& sigma);

/// Exact qubit value: f evaluated at ((1+z)/2, (1-z)/2).
double qubit_cm(const DensityMatrix& sigma, const PureCoherenceFunctional& f);

/// f restricted to qubit pure states as a function of the off-diagonal
/// modulus |b| in [0, 1/2].
double qubit_b_profile(const PureCoherenceFunctional& f, double b_abs);

/// Grid second-difference probe certifying that qubit_b_profile is convex;
/// a convex profile upgrades the qubit monotone to a convex measure.
bool qubit_convexity_probe(const PureCoherenceFunctional& f, int grid_points = 201,
                           double slack = 1e-9, double* worst = nullptr);

/// Geometric-measure front end: closed form (1 - sqrt(1 - 4|b|^2))/2 for
/// qubits, convex-roof optimization otherwise (the two coincide for the
/// geometric functional on every decomposition).
SolveReport cm_geometric(const DensityMatrix& rho, const SolveOptions& opts = {});

struct GridSpec {
  int angles = 720;   // qubit rotation-angle sweep
  int samples = 400;  // random isometries per ensemble size
  std::uint64_t seed = 0;
};

/// Independent oracle for dims 2 and 3: minimizes f(aggregate) over an
/// exhaustive rotation grid (dim 2) or dense Haar isometry samples (dim 3).
/// Always an upper bound on the monotone; converges as the grid refines.
double brute_force_cm(const DensityMatrix& rho, const PureCoherenceFunctional& f,
                      const GridSpec& grid = {});

}  // namespace coherence
