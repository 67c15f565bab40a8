#include "thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinthermo {

namespace {

void check_state(ThermoState s) {
    if (!std::isfinite(s.beta_z) || !std::isfinite(s.beta_d))
        throw DomainError("thermo: beta values must be finite");
}

Matrix qe_exponent(const OperatorSet& ops, ThermoState s) {
    return -s.beta_z * ops.hz - s.beta_d * ops.hd;
}

}  // namespace

GibbsResult gibbs_state(const Matrix& exponent) {
    EigenSystem es = herm_eig(exponent);
    const double shift = es.values.maxCoeff();
    Eigen::VectorXd w = (es.values.array() - shift).exp();
    const double z = w.sum();
    GibbsResult out;
    out.rho = es.vectors * (w / z).asDiagonal() * es.vectors.adjoint();
    out.log_z = shift + std::log(z);
    return out;
}

Matrix qe_density(const OperatorSet& ops, ThermoState s) {
    check_state(s);
    return gibbs_state(qe_exponent(ops, s)).rho;
}

double log_partition(const OperatorSet& ops, ThermoState s) {
    check_state(s);
    return gibbs_state(qe_exponent(ops, s)).log_z;
}

std::pair<double, double> energies(const OperatorSet& ops, ThermoState s) {
    const Matrix rho = qe_density(ops, s);
    return {(rho * ops.hz).trace().real(), (rho * ops.hd).trace().real()};
}

Eigen::Matrix2d susceptibility(const OperatorSet& ops, ThermoState s) {
    const Matrix rho = qe_density(ops, s);
    const Matrix* hs[2] = {&ops.hz, &ops.hd};
    double mean[2];
    for (int i = 0; i < 2; ++i) mean[i] = (rho * *hs[i]).trace().real();
    Eigen::Matrix2d m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = -((rho * *hs[i] * *hs[j]).trace().real() - mean[i] * mean[j]);
    // 2x2 symmetric: condition number from the eigenvalues.
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    const double l1 = std::abs(tr / 2 + disc);
    const double l2 = std::abs(tr / 2 - disc);
    const double lo = std::min(l1, l2);
    const double hi = std::max(l1, l2);
    if (!(lo > 0) || hi / lo > 1e10)
        throw SingularSusceptibilityError(
            "susceptibility: matrix is numerically singular (beta_z=" +
            std::to_string(s.beta_z) + ", beta_d=" + std::to_string(s.beta_d) + ")");
    return m;
}

Matrix flux_correction(const OperatorSet& ops, double epsilon) {
    if (!(epsilon > 0)) throw DomainError("flux_correction: epsilon must be > 0");
    const Matrix k = flux_operator(ops);
    const Matrix& v = ops.eig_h.vectors;
    const Vector& e = ops.eig_h.values;
    Matrix kt = v.adjoint() * k * v;
    for (Eigen::Index a = 0; a < kt.rows(); ++a)
        for (Eigen::Index b = 0; b < kt.cols(); ++b)
            kt(a, b) /= Complex(epsilon, e(a) - e(b));
    return v * kt * v.adjoint();
}

RelaxModel::RelaxModel(const OperatorSet& ops, double epsilon)
    : ops_(&ops),
      epsilon_(epsilon),
      k_(flux_operator(ops)),
      j_(flux_correction(ops, epsilon)) {}

Matrix RelaxModel::ne_density(ThermoState s) const {
    check_state(s);
    const Matrix exponent =
        qe_exponent(*ops_, s) - (s.beta_d - s.beta_z) * j_;
    return gibbs_state(exponent).rho;
}

double RelaxModel::avg_flux(ThermoState s) const {
    return (ne_density(s) * k_).trace().real();
}

std::array<double, 2> RelaxModel::rhs(ThermoState s) const {
    const Eigen::Matrix2d m = susceptibility(*ops_, s);
    const double flux = avg_flux(s);
    const Eigen::Vector2d de(flux, -flux);
    const Eigen::Vector2d db = m.partialPivLu().solve(de);
    return {db(0), db(1)};
}

Matrix ne_density(const OperatorSet& ops, ThermoState s, double epsilon) {
    return RelaxModel(ops, epsilon).ne_density(s);
}

double avg_flux(const OperatorSet& ops, ThermoState s, double epsilon) {
    return RelaxModel(ops, epsilon).avg_flux(s);
}

std::array<double, 2> rhs(const OperatorSet& ops, ThermoState s, double epsilon) {
    return RelaxModel(ops, epsilon).rhs(s);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0, 1. / 5, 3. / 10, 4. / 5, 8. / 9, 1, 1};
constexpr double kA[7][6] = {
    {},
    {1. / 5},
    {3. / 40, 9. / 40},
    {44. / 45, -56. / 15, 32. / 9},
    {19372. / 6561, -25360. / 2187, 64448. / 6561, -212. / 729},
    {9017. / 3168, -355. / 33, 46732. / 5247, 49. / 176, -5103. / 18656},
    {35. / 384, 0, 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84}};
constexpr double kB5[7] = {35. / 384,      0, 500. / 1113, 125. / 192,
                           -2187. / 6784, 11. / 84, 0};
constexpr double kB4[7] = {5179. / 57600,    0,          7571. / 16695, 393. / 640,
                           -92097. / 339200, 187. / 2100, 1. / 40};

using State2 = std::array<double, 2>;

State2 axpy(const State2& y, double h, const State2& d) {
    return {y[0] + h * d[0], y[1] + h * d[1]};
}

// Cubic Hermite interpolation on [t0, t0+h].
State2 hermite(const State2& y0, const State2& f0, const State2& y1,
               const State2& f1, double h, double theta) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + theta;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    State2 out;
    for (int i = 0; i < 2; ++i)
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    return out;
}

}  // namespace

Trajectory integrate(const OperatorSet& ops, ThermoState s0, double epsilon,
                     const IntegrateOptions& opts) {
    check_state(s0);
    if (!(opts.t_max > 0)) throw DomainError("integrate: t_max must be > 0");
    if (!(opts.tol > 0)) throw DomainError("integrate: tol must be > 0");

    const RelaxModel model(ops, epsilon);
    auto f = [&model](const State2& y) {
        return model.rhs({y[0], y[1]});
    };

    const double record_dt =
        opts.record_dt > 0 ? opts.record_dt : opts.t_max / 199.0;
    const double atol =
        opts.tol * 1e-6 * std::max({std::abs(s0.beta_z), std::abs(s0.beta_d), 1e-30});

    Trajectory traj;
    auto push_record = [&](double t, const State2& y) {
        TrajectoryRecord rec;
        rec.t = t;
        rec.state = {y[0], y[1]};
        std::tie(rec.e_z, rec.e_d) = energies(ops, rec.state);
        if (opts.concurrence_eval)
            rec.concurrences = opts.concurrence_eval(model.ne_density(rec.state));
        traj.records.push_back(std::move(rec));
    };

    double t = 0;
    State2 y = {s0.beta_z, s0.beta_d};
    State2 fy = f(y);
    push_record(0, y);
    double next_record = record_dt;

    auto reached_fixed_point = [&](const State2& v) {
        return std::abs(v[0] - v[1]) <
               opts.stop_rel_gap * std::max(std::abs(v[0]), std::abs(v[1]));
    };
    if (reached_fixed_point(y)) {
        traj.converged = true;
        return traj;
    }

    // Starting step from the initial slope.
    double h = opts.t_max * 1e-4;
    {
        const double fn = std::max(std::abs(fy[0]), std::abs(fy[1]));
        const double yn = std::max(std::abs(y[0]), std::abs(y[1]));
        if (fn > 0) h = std::min(h, 0.01 * (yn + atol) / fn);
    }

    while (t < opts.t_max) {
        h = std::min(h, opts.t_max - t);
        if (h < 1e-12)
            throw StiffnessError("integrate: step size underflow", t, {y[0], y[1]});

        State2 k[7];
        k[0] = fy;
        for (int s = 1; s < 7; ++s) {
            State2 ys = y;
            for (int i = 0; i < s; ++i) {
                ys[0] += h * kA[s][i] * k[i][0];
                ys[1] += h * kA[s][i] * k[i][1];
            }
            k[s] = f(ys);
        }
        State2 y5 = y, err = {0, 0};
        for (int s = 0; s < 7; ++s) {
            y5[0] += h * kB5[s] * k[s][0];
            y5[1] += h * kB5[s] * k[s][1];
            err[0] += h * (kB5[s] - kB4[s]) * k[s][0];
            err[1] += h * (kB5[s] - kB4[s]) * k[s][1];
        }
        double norm = 0;
        for (int i = 0; i < 2; ++i) {
            const double sc = atol + opts.tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            norm += (err[i] / sc) * (err[i] / sc);
        }
        norm = std::sqrt(norm / 2);

        if (norm <= 1.0) {
            const State2 fy1 = k[6];  // FSAL: stage 7 is f(t+h, y5)
            // Dense output at the record cadence.
            if (!opts.record_every_step) {
                while (next_record <= t + h + 1e-15 * opts.t_max &&
                       next_record <= opts.t_max) {
                    const double theta = (next_record - t) / h;
                    if (theta > 1 + 1e-12) break;
                    push_record(next_record,
                                hermite(y, fy, y5, fy1, h, std::min(theta, 1.0)));
                    next_record += record_dt;
                }
            }
            t += h;
            y = y5;
            fy = fy1;
            if (opts.record_every_step) push_record(t, y);
            if (reached_fixed_point(y)) {
                if (!opts.record_every_step &&
                    (traj.records.empty() || traj.records.back().t < t))
                    push_record(t, y);
                traj.converged = true;
                break;
            }
        }
        double factor = norm > 0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
    }
    if (!traj.converged && !opts.record_every_step &&
        (traj.records.empty() || traj.records.back().t < t))
        push_record(t, y);
    return traj;
}

double equilibrium_beta(const OperatorSet& ops, ThermoState s0) {
    check_state(s0);
    const auto [ez0, ed0] = energies(ops, s0);
    const double e0 = ez0 + ed0;
    const double beta_hi = 10.0 * std::max(std::abs(s0.beta_z), std::abs(s0.beta_d));
    if (beta_hi == 0) return 0.0;

    auto total = [&](double b) {
        const auto [ez, ed] = energies(ops, {b, b});
        return ez + ed;
    };
    const double e_lo = total(beta_hi);  // E decreasing in beta: most negative end
    if (e0 > 0.0 || e0 < e_lo)
        throw DomainError(
            "equilibrium_beta: initial energy " + std::to_string(e0) +
            " outside attainable range [" + std::to_string(e_lo) + ", 0]");

    double lo = 0, hi = beta_hi;
    const double target = 1e-10 * std::max(std::abs(e0), 1e-300);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e = total(mid);
        if (std::abs(e - e0) < target) return mid;
        (e > e0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace spinthermo
