#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace spinthermo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

/// Thrown when a precondition on operator inputs is violated.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation detects a numerically degenerate input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct EigenSystem {
    Vector values;
    Matrix vectors;  // unitary, eigenvectors in columns
};

/// max |A[a][b] - conj(A[b][a])| < tol * max|A|
bool is_hermitian(const Matrix& a, double rel_tol = 1e-12);

/// Spin-1/2 angular momentum projection (sigma_alpha / 2) embedded at
/// `site` of an N-spin register. Site 1 is the most significant qubit;
/// |0> is spin-up (I_z eigenvalue +1/2).
Matrix spin_operator(char axis, int site, int n_spins);

EigenSystem herm_eig(const Matrix& a);

/// V diag(exp(E_a)) V^dagger. Hermitian positive definite by construction.
Matrix mat_exp_hermitian(const Matrix& a);

/// Trace over all spins except m and n. The retained two-spin basis is
/// ordered (m, n) with m's bit most significant.
Matrix partial_trace_pair(const Matrix& rho, int m, int n, int n_spins);

Matrix commutator(const Matrix& a, const Matrix& b);

/// sum_{a,b} A[a][b] B[b][a]
Complex trace_product(const Matrix& a, const Matrix& b);

}  // namespace spinthermo
