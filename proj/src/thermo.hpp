#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "hamiltonian.hpp"

namespace spinthermo {

/// Dimensionless inverse Zeeman and dipolar spin temperatures.
struct ThermoState {
    double beta_z = 0.0;
    double beta_d = 0.0;
};

class SingularSusceptibilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Step-size underflow during integration; carries the offending state.
class StiffnessError : public NumericalError {
public:
    StiffnessError(const std::string& msg, double t, ThermoState state)
        : NumericalError(msg), t(t), state(state) {}
    double t;
    ThermoState state;
};

struct GibbsResult {
    Matrix rho;
    double log_z;
};

/// exp(X)/Tr exp(X) for Hermitian X. The exponent is always shifted by its
/// largest eigenvalue, so beta values up to ~1e3 stay representable.
GibbsResult gibbs_state(const Matrix& exponent);

/// Quasi-equilibrium state exp(-beta_z Hz - beta_d Hd)/Z.
Matrix qe_density(const OperatorSet& ops, ThermoState s);

/// ln Z(beta_z, beta_d) of the quasi-equilibrium state.
double log_partition(const OperatorSet& ops, ThermoState s);

/// (E_z, E_d) = (Tr(rho_qe Hz), Tr(rho_qe Hd)).
std::pair<double, double> energies(const OperatorSet& ops, ThermoState s);

/// M[i][j] = d<H_i>/d beta_j = -Cov(H_i, H_j) under rho_qe; symmetric,
/// negative definite away from degenerate scenarios. Throws
/// SingularSusceptibilityError when cond(M) > 1e10.
Eigen::Matrix2d susceptibility(const OperatorSet& ops, ThermoState s);

/// Retarded flux integral J = int_{-inf}^0 e^{eps tau} K(tau) d tau,
/// evaluated in the eigenbasis of H: J[a][b] = K[a][b]/(eps + i(E_a - E_b)).
Matrix flux_correction(const OperatorSet& ops, double epsilon);

/// Non-equilibrium statistical operator
/// exp(-beta_z Hz - beta_d Hd - (beta_d - beta_z) J)/Z.
Matrix ne_density(const OperatorSet& ops, ThermoState s, double epsilon);

/// <K> = Tr(rho_ne K).
double avg_flux(const OperatorSet& ops, ThermoState s, double epsilon);

/// (d beta_z/dt, d beta_d/dt) from M(beta) d beta/dt = (<K>, -<K>).
std::array<double, 2> rhs(const OperatorSet& ops, ThermoState s, double epsilon);

/// Flux machinery with K and J precomputed for one epsilon. Pure and
/// immutable after construction; the OperatorSet must outlive it.
class RelaxModel {
public:
    RelaxModel(const OperatorSet& ops, double epsilon);

    Matrix ne_density(ThermoState s) const;
    double avg_flux(ThermoState s) const;
    std::array<double, 2> rhs(ThermoState s) const;

    const Matrix& flux_op() const { return k_; }
    const Matrix& correction() const { return j_; }
    double epsilon() const { return epsilon_; }

private:
    const OperatorSet* ops_;
    double epsilon_;
    Matrix k_;
    Matrix j_;
};

struct TrajectoryRecord {
    double t = 0.0;
    ThermoState state;
    double e_z = 0.0;
    double e_d = 0.0;
    std::vector<double> concurrences;  // empty unless an evaluator is set
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    bool converged = false;  // early-stopped on temperature equalization
};

struct IntegrateOptions {
    double t_max = 2000.0;
    double tol = 1e-8;
    /// Interval between dense-output records; 0 picks t_max/199 (200 rows).
    double record_dt = 0.0;
    /// Record every accepted step instead of the fixed cadence.
    bool record_every_step = false;
    /// Early stop when |beta_z - beta_d| < stop_rel_gap * max(|beta_z|,|beta_d|).
    double stop_rel_gap = 1e-6;
    /// Optional per-record concurrence evaluator, fed the rho_ne of the record.
    std::function<std::vector<double>(const Matrix& rho_ne)> concurrence_eval;
};

/// Adaptive Dormand-Prince 5(4) integration of the temperature-equalization
/// ODE, with cubic-Hermite dense output at the record cadence.
Trajectory integrate(const OperatorSet& ops, ThermoState s0, double epsilon,
                     const IntegrateOptions& opts);

/// Solves E_z(b,b) + E_d(b,b) = E_z(s0) + E_d(s0) for b by bisection on
/// [0, 10 max(beta_z0, beta_d0)]; the independent endpoint oracle.
double equilibrium_beta(const OperatorSet& ops, ThermoState s0);

}  // namespace spinthermo
