#include "entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "operator_core.hpp"

namespace spinthermo {

namespace {

Matrix spin_flip_operator() {
    // sigma_y (x) sigma_y; real in this basis.
    Matrix s = Matrix::Zero(4, 4);
    s(0, 3) = -1;
    s(1, 2) = 1;
    s(2, 1) = 1;
    s(3, 0) = -1;
    return s;
}

}  // namespace

PairConcurrence concurrence_pair(const Matrix& rho, int m, int n, int n_spins) {
    const Matrix reduced = partial_trace_pair(rho, m, n, n_spins);

    // sqrt of the reduced state; tiny negative eigenvalues are clamped.
    EigenSystem es = herm_eig(reduced);
    if (es.values.minCoeff() < -1e-10)
        throw NumericalError("concurrence_pair: reduced state is not positive");
    // Populations below 1e-14 are zeroed outright: the square root would
    // otherwise turn O(1e-16) rounding noise into O(1e-8) lambda errors.
    Eigen::VectorXd sqrt_p =
        (es.values.array() < 1e-14).select(0.0, es.values).cwiseSqrt();
    const Matrix sqrt_rho =
        es.vectors * sqrt_p.asDiagonal() * es.vectors.adjoint();

    static const Matrix s = spin_flip_operator();
    const Matrix w = sqrt_rho * s * reduced.conjugate() * s * sqrt_rho;
    // w is Hermitian PSD and similar to R = rho S conj(rho) S; its
    // eigenvalues are the squares of the lambdas.
    EigenSystem ew = herm_eig((w + w.adjoint()) / 2.0);
    Eigen::Vector4d sq = ew.values;
    if (sq.minCoeff() < -1e-8)
        throw NumericalError("concurrence_pair: spin-flip spectrum is negative");

    PairConcurrence out;
    out.m = std::min(m, n);
    out.n = std::max(m, n);
    // Same noise-floor treatment as above, relative to the leading
    // eigenvalue: spurious 1e-16 modes would contribute 1e-8 lambdas.
    const double floor_sq = 1e-13 * std::max(sq.maxCoeff(), 0.0);
    for (int i = 0; i < 4; ++i) {
        const double v = sq(3 - i);
        out.lambdas[i] = v > floor_sq ? std::sqrt(v) : 0.0;  // descending
    }
    out.value = std::max(
        0.0, out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3]);
    return out;
}

std::vector<PairConcurrence> concurrence_all(const Matrix& rho, int n_spins) {
    std::vector<PairConcurrence> out;
    out.reserve(std::size_t(n_spins) * (n_spins - 1) / 2);
    for (int m = 1; m <= n_spins; ++m)
        for (int n = m + 1; n <= n_spins; ++n)
            out.push_back(concurrence_pair(rho, m, n, n_spins));
    return out;
}

}  // namespace spinthermo
