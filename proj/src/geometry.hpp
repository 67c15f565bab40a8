#pragma once

#include <string>
#include <vector>

#include "operator_core.hpp"

namespace spinthermo {

/// Dimensionless dipolar coupling and orientation of one spin pair.
struct PairCoupling {
    int j = 0;
    int k = 0;        // j < k
    double d = 0.0;   // coupling magnitude, nearest-neighbor unit D = 1
    double theta = 0.0;
    double phi = 0.0;
};

struct SpinGeometry {
    int n_spins = 0;
    std::vector<PairCoupling> pairs;  // all j < k, each exactly once
    std::string label;                // chain, ring, rectangle, custom
};

/// Throws DomainError if the pair list is incomplete, duplicated, or has
/// non-positive couplings / non-finite angles.
void validate(const SpinGeometry& geom);

/// Linear chain: D_jk = |j-k|^-3, theta = phi = pi/2.
SpinGeometry build_chain(int n_spins);

/// Ring of N spins; D from the chord-length formula, phi from the N=4 table
/// (general N: phi_jk = angle of the chord from site j to site k).
SpinGeometry build_ring(int n_spins);

/// The fixed four-spin rectangle with side ratio sqrt(3).
SpinGeometry build_rectangle();

/// Explicit pair list from a config file; validated like the built-ins.
SpinGeometry build_custom(int n_spins, std::vector<PairCoupling> pairs);

}  // namespace spinthermo
