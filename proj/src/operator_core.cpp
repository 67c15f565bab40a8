#include "operator_core.hpp"

#include <string>

namespace spinthermo {

bool is_hermitian(const Matrix& a, double rel_tol) {
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() < rel_tol * scale;
}

Matrix spin_operator(char axis, int site, int n_spins) {
    if (n_spins < 1) throw DomainError("spin_operator: need at least one spin");
    if (site < 1 || site > n_spins)
        throw DomainError("spin_operator: site " + std::to_string(site) +
                          " out of range [1," + std::to_string(n_spins) + "]");
    if (axis != 'x' && axis != 'y' && axis != 'z')
        throw DomainError("spin_operator: axis must be one of x,y,z");

    const Eigen::Index dim = Eigen::Index(1) << n_spins;
    Matrix out = Matrix::Zero(dim, dim);
    // Bit of `site` within a basis index; site 1 is most significant.
    const Eigen::Index bit = Eigen::Index(1) << (n_spins - site);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const bool down = (a & bit) != 0;  // bit 0 = spin-up
        switch (axis) {
            case 'z':
                out(a, a) = down ? -0.5 : 0.5;
                break;
            case 'x':
                out(a ^ bit, a) = 0.5;
                break;
            case 'y':
                // sigma_y/2: |1><0| gets +i/2, |0><1| gets -i/2
                out(a ^ bit, a) = down ? Complex(0, -0.5) : Complex(0, 0.5);
                break;
        }
    }
    return out;
}

EigenSystem herm_eig(const Matrix& a) {
    if (a.rows() != a.cols()) throw DomainError("herm_eig: matrix not square");
    if (!is_hermitian(a)) throw DomainError("herm_eig: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericalError("herm_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix mat_exp_hermitian(const Matrix& a) {
    EigenSystem es = herm_eig(a);
    return es.vectors * es.values.array().exp().matrix().asDiagonal() *
           es.vectors.adjoint();
}

Matrix partial_trace_pair(const Matrix& rho, int m, int n, int n_spins) {
    const Eigen::Index dim = Eigen::Index(1) << n_spins;
    if (rho.rows() != dim || rho.cols() != dim)
        throw DomainError("partial_trace_pair: density matrix has wrong dimension");
    if (m < 1 || m > n_spins || n < 1 || n > n_spins)
        throw DomainError("partial_trace_pair: site out of range");
    if (m == n) throw DomainError("partial_trace_pair: sites must differ");

    const Eigen::Index bm = Eigen::Index(1) << (n_spins - m);
    const Eigen::Index bn = Eigen::Index(1) << (n_spins - n);
    const Eigen::Index mask = ~(bm | bn);

    Matrix out = Matrix::Zero(4, 4);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const Eigen::Index rest = a & mask;
        const int ra = 2 * ((a & bm) ? 1 : 0) + ((a & bn) ? 1 : 0);
        for (int rb = 0; rb < 4; ++rb) {
            const Eigen::Index b = rest | ((rb & 2) ? bm : 0) | ((rb & 1) ? bn : 0);
            out(ra, rb) += rho(a, b);
        }
    }
    // Each (a, rb) pair above covers every b sharing a's environment bits,
    // so the sum over the environment is complete after one pass over a.
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("commutator: dimension mismatch");
    return a * b - b * a;
}

Complex trace_product(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("trace_product: dimension mismatch");
    return (a * b).trace();
}

}  // namespace spinthermo
