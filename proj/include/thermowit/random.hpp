#pragma once

#include <cstdint>

#include "thermowit/rng.hpp"
#include "thermowit/state.hpp"

namespace thermowit {

/// Ginibre-ensemble density matrix G G^dag / tr(G G^dag); deterministic per seed.
DensityMatrix random_density_matrix(int dim, std::uint64_t seed);
DensityMatrix random_density_matrix(int dim, Rng& rng);

/// Normalized complex Gaussian vector as a pure-state projector.
DensityMatrix random_pure_state(int dim, Rng& rng);
DensityMatrix random_pure_state(const Dims& dims, std::uint64_t seed);

/// Convex mixture of k random product states with Dirichlet-like weights;
/// separable by construction.
DensityMatrix random_separable_state(const Dims& dims, int k, std::uint64_t seed);

/// Random diagonal (incoherent) state from Dirichlet-like populations.
DensityMatrix random_incoherent_state(int dim, std::uint64_t seed);

Matrix random_hermitian(int dim, Rng& rng);

/// Haar-like random unitary: eigenbasis of a random Hermitian matrix.
Matrix random_unitary(int dim, Rng& rng);

}  // namespace thermowit
