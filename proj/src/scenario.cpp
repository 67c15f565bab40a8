#include "scenario.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "entanglement.hpp"
#include "hamiltonian.hpp"

namespace spinthermo {

using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double number_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) fail(std::string(key) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(std::string(key) + " must be finite");
    return x;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok) fail("unknown key \"" + item.key() + "\" in " + where);
    }
}

SpinGeometry parse_geometry(const json& v) {
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        if (name == "chain") return build_chain(4);
        if (name == "ring") return build_ring(4);
        if (name == "rectangle") return build_rectangle();
        fail("geometry \"" + name + "\" is not chain, ring, or rectangle");
    }
    if (!v.is_object()) fail("geometry must be a name or an object");
    reject_unknown_keys(v, {"n", "pairs"}, "geometry");
    if (!v.contains("n") || !v.at("n").is_number_integer())
        fail("geometry.n must be an integer");
    const int n = v.at("n").get<int>();
    if (!v.contains("pairs") || !v.at("pairs").is_array())
        fail("geometry.pairs must be an array");
    std::vector<PairCoupling> pairs;
    for (const json& p : v.at("pairs")) {
        if (!p.is_object()) fail("geometry.pairs entries must be objects");
        reject_unknown_keys(p, {"j", "k", "d", "theta", "phi"}, "geometry.pairs");
        for (const char* key : {"j", "k"})
            if (!p.contains(key) || !p.at(key).is_number_integer())
                fail(std::string("geometry.pairs.") + key + " must be an integer");
        PairCoupling pc;
        pc.j = p.at("j").get<int>();
        pc.k = p.at("k").get<int>();
        pc.d = number_field(p, "d", 0.0);
        pc.theta = number_field(p, "theta", 0.0);
        pc.phi = number_field(p, "phi", 0.0);
        pairs.push_back(pc);
    }
    try {
        return build_custom(n, std::move(pairs));
    } catch (const DomainError& e) {
        fail(std::string("geometry: ") + e.what());
    }
}

std::vector<std::pair<int, int>> parse_pairs(const json& v, int n_spins) {
    if (v.is_string()) {
        if (v.get<std::string>() == "all") return {};
        fail("pairs must be \"all\" or an array of [m, n] pairs");
    }
    if (!v.is_array()) fail("pairs must be \"all\" or an array of [m, n] pairs");
    std::vector<std::pair<int, int>> out;
    for (const json& p : v) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer())
            fail("pairs entries must be two-element integer arrays");
        int m = p[0].get<int>(), n = p[1].get<int>();
        if (m > n) std::swap(m, n);
        if (m < 1 || n > n_spins || m == n)
            fail("pairs entry [" + std::to_string(m) + ", " + std::to_string(n) +
                 "] is not a valid spin pair");
        out.emplace_back(m, n);
    }
    if (out.empty()) fail("pairs array must not be empty");
    return out;
}

void validate_numbers(const Scenario& s) {
    if (!(s.ratio > 0)) fail("ratio must be > 0");
    if (!(s.beta_z0 >= 0)) fail("beta_z0 must be >= 0");
    if (!(s.beta_d0 >= 0)) fail("beta_d0 must be >= 0");
    if (!(s.epsilon_factor > 0)) fail("epsilon_factor must be > 0");
    if (!(s.t_max > 0)) fail("t_max must be > 0");
    if (!(s.tol > 1e-14 && s.tol < 1e-2))
        fail("tol must lie in (1e-14, 1e-2)");
    if (!(s.output_every >= 0)) fail("output_every must be >= 0");
    if (!(s.fade_threshold > 0)) fail("fade_threshold must be > 0");
}

// Pair index within the concurrence_all ordering (1,2), (1,3), ...
std::vector<int> selected_indices(const Scenario& s) {
    std::vector<std::pair<int, int>> order;
    for (int m = 1; m <= s.geometry.n_spins; ++m)
        for (int n = m + 1; n <= s.geometry.n_spins; ++n)
            order.emplace_back(m, n);
    std::vector<int> out;
    if (s.pairs.empty()) {
        for (int i = 0; i < int(order.size()); ++i) out.push_back(i);
        return out;
    }
    for (const auto& p : s.pairs)
        for (int i = 0; i < int(order.size()); ++i)
            if (order[i] == p) out.push_back(i);
    return out;
}

}  // namespace

Scenario default_scenario() {
    Scenario s;
    s.geometry = build_chain(4);
    return s;
}

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("scenario must be a JSON object");
    reject_unknown_keys(j,
                        {"geometry", "ratio", "beta_z0", "beta_d0",
                         "epsilon_factor", "t_max", "tol", "output_every",
                         "pairs", "fade_threshold"},
                        "scenario");

    Scenario s = default_scenario();
    if (j.contains("geometry")) s.geometry = parse_geometry(j.at("geometry"));
    s.ratio = number_field(j, "ratio", s.ratio);
    s.beta_z0 = number_field(j, "beta_z0", s.beta_z0);
    s.beta_d0 = number_field(j, "beta_d0", s.beta_d0);
    s.epsilon_factor = number_field(j, "epsilon_factor", s.epsilon_factor);
    s.t_max = number_field(j, "t_max", s.t_max);
    s.tol = number_field(j, "tol", s.tol);
    s.output_every = number_field(j, "output_every", s.output_every);
    s.fade_threshold = number_field(j, "fade_threshold", s.fade_threshold);
    if (j.contains("pairs")) s.pairs = parse_pairs(j.at("pairs"), s.geometry.n_spins);
    validate_numbers(s);
    return s;
}

std::string to_json(const RelaxSummary& summary) {
    json j;
    j["beta_z_end"] = summary.beta_z_end;
    j["beta_d_end"] = summary.beta_d_end;
    j["beta_eq_oracle"] = summary.beta_eq_oracle;
    j["t_fade"] = summary.t_fade;  // non-finite values serialize as null
    j["t_eq"] = summary.t_eq;
    j["converged"] = summary.converged;
    return j.dump();
}

RelaxSummary run_relax(const Scenario& scenario, std::ostream& csv) {
    const OperatorSet ops = build_operator_set(scenario.geometry, scenario.ratio);
    const double epsilon = scenario.epsilon_factor * ops.omega_d;
    const ThermoState s0{scenario.beta_z0, scenario.beta_d0};
    const int n = scenario.geometry.n_spins;

    IntegrateOptions opts;
    opts.t_max = scenario.t_max;
    opts.tol = scenario.tol;
    opts.record_dt = scenario.output_every;
    opts.concurrence_eval = [n](const Matrix& rho) {
        std::vector<double> c;
        for (const PairConcurrence& pc : concurrence_all(rho, n))
            c.push_back(pc.value);
        return c;
    };
    const Trajectory traj = integrate(ops, s0, epsilon, opts);

    csv << "t,beta_z,beta_d,E_z,E_d";
    for (int m = 1; m <= n; ++m)
        for (int k = m + 1; k <= n; ++k) csv << ",C_" << m << k;
    csv << "\n";
    for (const TrajectoryRecord& rec : traj.records) {
        csv << format_double(rec.t) << ',' << format_double(rec.state.beta_z)
            << ',' << format_double(rec.state.beta_d) << ','
            << format_double(rec.e_z) << ',' << format_double(rec.e_d);
        for (double c : rec.concurrences) csv << ',' << format_double(c);
        csv << "\n";
    }

    RelaxSummary out;
    const TrajectoryRecord& last = traj.records.back();
    out.beta_z_end = last.state.beta_z;
    out.beta_d_end = last.state.beta_d;
    out.beta_eq_oracle = equilibrium_beta(ops, s0);
    out.converged = traj.converged;

    // t_eq: first crossing of |bz - bd| below 1e-3 max(|bz|, |bd|),
    // linearly interpolated between the bracketing records.
    auto gap = [](const TrajectoryRecord& r) {
        return std::abs(r.state.beta_z - r.state.beta_d) -
               1e-3 * std::max(std::abs(r.state.beta_z), std::abs(r.state.beta_d));
    };
    out.t_eq = kInf;
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
        const double g = gap(traj.records[i]);
        if (g > 0) continue;
        if (i == 0) {
            out.t_eq = 0.0;
        } else {
            const double g0 = gap(traj.records[i - 1]);
            const double t0 = traj.records[i - 1].t;
            const double t1 = traj.records[i].t;
            out.t_eq = g0 > 0 ? t0 + (t1 - t0) * g0 / (g0 - g) : t0;
        }
        break;
    }

    // t_fade: first record where every selected pair concurrence sits below
    // the threshold (cadence-limited resolution).
    const std::vector<int> sel = selected_indices(scenario);
    out.t_fade = kInf;
    for (const TrajectoryRecord& rec : traj.records) {
        bool faded = true;
        for (int idx : sel)
            if (rec.concurrences[idx] >= scenario.fade_threshold) faded = false;
        if (faded) {
            out.t_fade = rec.t;
            break;
        }
    }
    return out;
}

void run_surface(const Scenario& scenario, int nz, int nd, double zmax,
                 double dmax, bool overlay, bool ne_surface, std::ostream& csv) {
    if (nz < 2 || nd < 2) fail("surface grid needs at least 2 points per axis");
    if (!(zmax > 0) || !(dmax > 0)) fail("surface extents must be > 0");

    const OperatorSet ops = build_operator_set(scenario.geometry, scenario.ratio);
    const int n = scenario.geometry.n_spins;
    const RelaxModel model(ops, scenario.epsilon_factor * ops.omega_d);

    auto state_concurrences = [&](ThermoState s) {
        const Matrix rho = ne_surface ? model.ne_density(s) : qe_density(ops, s);
        std::vector<double> c;
        for (const PairConcurrence& pc : concurrence_all(rho, n))
            c.push_back(pc.value);
        return c;
    };

    // Grid points are independent; fill them from a shared work queue.
    const int total = nz * nd;
    std::vector<std::vector<double>> cell(total);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            const ThermoState s{zmax * (i / nd) / (nz - 1),
                                dmax * (i % nd) / (nd - 1)};
            cell[i] = state_concurrences(s);
        }
    };
    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    if (n_threads > 1) {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    } else {
        worker();
    }

    std::vector<std::string> pair_label;
    for (int m = 1; m <= n; ++m)
        for (int k = m + 1; k <= n; ++k)
            pair_label.push_back(std::to_string(m) + "-" + std::to_string(k));

    csv << "beta_z,beta_d,pair,C\n";
    for (int i = 0; i < total; ++i) {
        const std::string bz = format_double(zmax * (i / nd) / (nz - 1));
        const std::string bd = format_double(dmax * (i % nd) / (nd - 1));
        for (std::size_t p = 0; p < pair_label.size(); ++p)
            csv << bz << ',' << bd << ',' << pair_label[p] << ','
                << format_double(cell[i][p]) << "\n";
    }

    if (!overlay) return;

    // Diagonal cut beta_z = beta_d = beta.
    const int n_diag = std::max(nz, nd);
    const double bmax = std::min(zmax, dmax);
    csv << "# diagonal\n"
        << "beta,pair,C\n";
    for (int i = 0; i < n_diag; ++i) {
        const double b = bmax * i / (n_diag - 1);
        const std::vector<double> c = state_concurrences({b, b});
        for (std::size_t p = 0; p < pair_label.size(); ++p)
            csv << format_double(b) << ',' << pair_label[p] << ','
                << format_double(c[p]) << "\n";
    }

    // Relaxation path of the scenario through the (beta_z, beta_d) plane.
    IntegrateOptions opts;
    opts.t_max = scenario.t_max;
    opts.tol = scenario.tol;
    opts.record_dt = scenario.output_every;
    const Trajectory traj =
        integrate(ops, {scenario.beta_z0, scenario.beta_d0},
                  scenario.epsilon_factor * ops.omega_d, opts);
    csv << "# overlay\n"
        << "t,beta_z,beta_d\n";
    for (const TrajectoryRecord& rec : traj.records)
        csv << format_double(rec.t) << ',' << format_double(rec.state.beta_z)
            << ',' << format_double(rec.state.beta_d) << "\n";
}

void run_dump(const SpinGeometry& geom, double ratio, const std::string& op_name,
              std::ostream& csv) {
    if (!(ratio > 0)) fail("ratio must be > 0");
    const OperatorSet ops = build_operator_set(geom, ratio);
    const Matrix* m = nullptr;
    Matrix k;
    if (op_name == "Hz") m = &ops.hz;
    else if (op_name == "Hdd") m = &ops.hdd;
    else if (op_name == "Hd") m = &ops.hd;
    else if (op_name == "Hnd") m = &ops.hnd;
    else if (op_name == "H") m = &ops.h;
    else if (op_name == "K") { k = flux_operator(ops); m = &k; }
    else fail("operator \"" + op_name + "\" is not one of Hz, Hdd, Hd, Hnd, H, K");

    csv << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < m->rows(); ++r)
        for (Eigen::Index c = 0; c < m->cols(); ++c) {
            const Complex v = (*m)(r, c);
            if (std::abs(v) <= 1e-14) continue;
            csv << r << ',' << c << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << "\n";
        }
}

}  // namespace spinthermo
