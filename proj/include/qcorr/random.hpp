#pragma once

#include <cstdint>

#include "qcorr/state.hpp"

namespace qcorr {

/// Haar-random pure state: a normalized complex Gaussian vector.
/// Deterministic for a fixed seed.
PureState random_pure_state(const SubsystemLayout& layout, std::uint64_t seed);

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
UnitaryMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// Random density matrix G G^dagger / Tr(G G^dagger) with G a dim x rank
/// Ginibre matrix (rank = 0 means full rank).
DensityMatrix random_density_matrix(const SubsystemLayout& layout, std::uint64_t seed,
                                    std::size_t rank = 0);

/// Random Hermitian matrix (GUE-like), for solver tests.
CMatrix random_hermitian(std::size_t dim, std::uint64_t seed);

}  // namespace qcorr
