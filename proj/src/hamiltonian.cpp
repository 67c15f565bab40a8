#include "hamiltonian.hpp"

#include <array>
#include <cmath>

namespace spinthermo {

Matrix build_zeeman(const SpinGeometry& geom, double omega0) {
    if (omega0 < 0) throw DomainError("build_zeeman: omega0 must be >= 0");
    const Eigen::Index dim = Eigen::Index(1) << geom.n_spins;
    Matrix out = Matrix::Zero(dim, dim);
    for (int j = 1; j <= geom.n_spins; ++j)
        out -= omega0 * spin_operator('z', j, geom.n_spins);
    return out;
}

namespace {

std::array<Matrix, 3> site_vector(int site, int n_spins) {
    return {spin_operator('x', site, n_spins), spin_operator('y', site, n_spins),
            spin_operator('z', site, n_spins)};
}

}  // namespace

Matrix build_dipolar_full(const SpinGeometry& geom) {
    validate(geom);
    const Eigen::Index dim = Eigen::Index(1) << geom.n_spins;
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& p : geom.pairs) {
        const double rx = std::sin(p.theta) * std::cos(p.phi);
        const double ry = std::sin(p.theta) * std::sin(p.phi);
        const double rz = std::cos(p.theta);
        const auto ij = site_vector(p.j, geom.n_spins);
        const auto ik = site_vector(p.k, geom.n_spins);
        const Matrix proj_j = rx * ij[0] + ry * ij[1] + rz * ij[2];
        const Matrix proj_k = rx * ik[0] + ry * ik[1] + rz * ik[2];
        const Matrix dot = ij[0] * ik[0] + ij[1] * ik[1] + ij[2] * ik[2];
        out -= p.d * (3.0 * proj_j * proj_k - dot);
    }
    return out;
}

Matrix build_secular(const SpinGeometry& geom) {
    validate(geom);
    const Eigen::Index dim = Eigen::Index(1) << geom.n_spins;
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& p : geom.pairs) {
        const double c = std::cos(p.theta);
        const double p2 = 0.5 * (3.0 * c * c - 1.0);
        const auto ij = site_vector(p.j, geom.n_spins);
        const auto ik = site_vector(p.k, geom.n_spins);
        const Matrix dot = ij[0] * ik[0] + ij[1] * ik[1] + ij[2] * ik[2];
        out -= p.d * p2 * (3.0 * ij[2] * ik[2] - dot);
    }
    return out;
}

double dipolar_energy_scale(const SpinGeometry& geom) {
    const Matrix hdd = build_dipolar_full(geom);
    const Eigen::Index dim = Eigen::Index(1) << geom.n_spins;
    Matrix iz_total = Matrix::Zero(dim, dim);
    for (int j = 1; j <= geom.n_spins; ++j)
        iz_total += spin_operator('z', j, geom.n_spins);
    const double num = (hdd * hdd).trace().real();
    const double den = (iz_total * iz_total).trace().real();
    return std::sqrt(num / den);
}

OperatorSet build_operator_set(const SpinGeometry& geom, double ratio) {
    if (!(ratio > 0)) throw DomainError("build_operator_set: ratio must be > 0");
    OperatorSet ops;
    ops.geometry = geom;
    ops.omega_d = dipolar_energy_scale(geom);
    ops.omega0 = ratio * ops.omega_d;
    ops.hz = build_zeeman(geom, ops.omega0);
    ops.hdd = build_dipolar_full(geom);
    ops.hd = build_secular(geom);
    ops.hnd = ops.hdd - ops.hd;
    ops.h = ops.hz + ops.hdd;
    ops.eig_h = herm_eig(ops.h);
    return ops;
}

Matrix flux_operator(const OperatorSet& ops) {
    return Complex(0, 1) * commutator(ops.h, ops.hz);
}

}  // namespace spinthermo
