#pragma once

#include <array>
#include <vector>

#include "operator_core.hpp"

namespace spinthermo {

/// Wootters concurrence of one spin pair inside an N-spin state.
struct PairConcurrence {
    int m = 0;
    int n = 0;
    double value = 0.0;                    // max(l1 - l2 - l3 - l4, 0)
    std::array<double, 4> lambdas{};       // descending, non-negative
};

/// Concurrence of spins (m, n) of an N-spin density matrix, via the reduced
/// density matrix and the spin-flipped spectrum. The four lambdas are the
/// square roots of the eigenvalues of rho (sy x sy) conj(rho) (sy x sy),
/// computed through the Hermitian form sqrt(rho) S conj(rho) S sqrt(rho).
PairConcurrence concurrence_pair(const Matrix& rho, int m, int n, int n_spins);

/// All N(N-1)/2 pairs, ordered (1,2), (1,3), ..., (N-1,N).
std::vector<PairConcurrence> concurrence_all(const Matrix& rho, int n_spins);

}  // namespace spinthermo
