#pragma once

#include <cstdint>
#include <random>

#include "coherence/majorization.hpp"

namespace coherence {

using Rng = std::mt19937_64;

/// splitmix64 step; the basis of all sub-seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic sub-seed for trial/restart `index` of a run seeded with
/// `seed`. Distinct indices give independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Rng make_rng(std::uint64_t seed);

PureState random_pure(int dim, Rng& rng);

/// Uniform sample from the probability simplex.
RealVector random_prob_vector(int dim, Rng& rng);

/// Normalized G G^dag with G a dim x rank complex Ginibre matrix.
DensityMatrix random_density(int dim, int rank, Rng& rng);

Ensemble random_ensemble(int dim, int size, Rng& rng);

/// Haar-distributed rows x cols isometry (QR of a Ginibre matrix with the
/// usual phase fix).
Matrix random_isometry(int rows, int cols, Rng& rng);

}  // namespace coherence
