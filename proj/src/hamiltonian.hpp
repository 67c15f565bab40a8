#pragma once

#include "geometry.hpp"
#include "operator_core.hpp"

namespace spinthermo {

/// The assembled operators of one scenario, all dimension 2^N.
/// hnd = hdd - hd by construction; [hz, hd] = 0.
struct OperatorSet {
    SpinGeometry geometry;
    Matrix hz;       // Zeeman
    Matrix hdd;      // full dipolar
    Matrix hd;       // secular dipolar part
    Matrix hnd;      // non-secular remainder
    Matrix h;        // hz + hdd
    double omega0 = 0.0;
    double omega_d = 0.0;
    EigenSystem eig_h;
};

/// -omega0 * sum_j I_zj; diagonal in the computational basis.
Matrix build_zeeman(const SpinGeometry& geom, double omega0);

/// -sum_{j<k} D_jk [3 (I_j.r)(I_k.r) - I_j.I_k] with the unit vector
/// r = (sin t cos p, sin t sin p, cos t).
Matrix build_dipolar_full(const SpinGeometry& geom);

/// Secular part of the full dipolar coupling:
/// -sum_{j<k} D_jk P2(cos theta_jk) (3 I_zj I_zk - I_j.I_k) with the
/// Legendre P2(x) = (3x^2 - 1)/2. Commutes with the Zeeman term.
Matrix build_secular(const SpinGeometry& geom);

/// omega_d = sqrt(Tr Hdd^2 / Tr (sum_j I_zj)^2)
double dipolar_energy_scale(const SpinGeometry& geom);

/// Assemble everything; omega0 = ratio * omega_d.
OperatorSet build_operator_set(const SpinGeometry& geom, double ratio);

/// Energy flux K = i[H, H_z].
Matrix flux_operator(const OperatorSet& ops);

}  // namespace spinthermo
