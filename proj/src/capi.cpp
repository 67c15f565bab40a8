#include "spinthermo.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "entanglement.hpp"
#include "scenario.hpp"

namespace {

thread_local std::string g_last_error;

using spinthermo::ConfigError;
using spinthermo::DomainError;
using spinthermo::NumericalError;

int set_error(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

// Runs `fn`, translating exceptions into error codes. Configuration and
// precondition problems map to ST_ERR_CONFIG; anything raised while
// computing maps to ST_ERR_NUMERIC.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return ST_OK;
    } catch (const ConfigError& e) {
        return set_error(ST_ERR_CONFIG, e.what());
    } catch (const DomainError& e) {
        return set_error(ST_ERR_CONFIG, e.what());
    } catch (const NumericalError& e) {
        return set_error(ST_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return set_error(ST_ERR_NUMERIC, e.what());
    }
}

// Writes through `emit` to the given path, or to stdout when path is null.
template <typename Emit>
void with_output(const char* path, Emit&& emit) {
    if (path == nullptr || *path == '\0') {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError(std::string("cannot open output file ") + path);
    emit(out);
    if (!out.flush())
        throw NumericalError(std::string("failed writing output file ") + path);
}

spinthermo::Scenario scenario_from(const char* config_json) {
    if (config_json == nullptr || *config_json == '\0')
        return spinthermo::default_scenario();
    return spinthermo::parse_scenario(config_json);
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct st_sim {
    spinthermo::Scenario scenario;
    spinthermo::OperatorSet ops;
    std::unique_ptr<spinthermo::RelaxModel> model;
};

extern "C" {

const char* st_last_error(void) { return g_last_error.c_str(); }

void st_string_free(char* s) { delete[] s; }

int st_relax(const char* config_json, const char* out_csv_path,
             char** summary_json_out) {
    return guarded([&] {
        const spinthermo::Scenario s = scenario_from(config_json);
        spinthermo::RelaxSummary summary;
        with_output(out_csv_path,
                    [&](std::ostream& os) { summary = run_relax(s, os); });
        if (summary_json_out)
            *summary_json_out = dup_string(spinthermo::to_json(summary));
    });
}

int st_surface(const char* config_json, int nz, int nd, double zmax,
               double dmax, int overlay, int ne_surface,
               const char* out_csv_path) {
    return guarded([&] {
        const spinthermo::Scenario s = scenario_from(config_json);
        with_output(out_csv_path, [&](std::ostream& os) {
            run_surface(s, nz, nd, zmax, dmax, overlay != 0, ne_surface != 0, os);
        });
    });
}

int st_dump(const char* geometry, double ratio, const char* op_name,
            const char* out_csv_path) {
    return guarded([&] {
        if (geometry == nullptr || op_name == nullptr)
            throw ConfigError("geometry and operator names are required");
        spinthermo::SpinGeometry geom;
        const std::string g = geometry;
        if (g == "chain") geom = spinthermo::build_chain(4);
        else if (g == "ring") geom = spinthermo::build_ring(4);
        else if (g == "rectangle") geom = spinthermo::build_rectangle();
        else throw ConfigError("geometry \"" + g +
                               "\" is not chain, ring, or rectangle");
        with_output(out_csv_path, [&](std::ostream& os) {
            run_dump(geom, ratio, op_name, os);
        });
    });
}

int st_sim_create(const char* config_json, st_sim** out) {
    return guarded([&] {
        if (out == nullptr) throw ConfigError("out handle must not be null");
        auto sim = std::make_unique<st_sim>();
        sim->scenario = scenario_from(config_json);
        sim->ops = spinthermo::build_operator_set(sim->scenario.geometry,
                                                  sim->scenario.ratio);
        sim->model = std::make_unique<spinthermo::RelaxModel>(
            sim->ops, sim->scenario.epsilon_factor * sim->ops.omega_d);
        *out = sim.release();
    });
}

void st_sim_destroy(st_sim* sim) { delete sim; }

double st_sim_omega_d(const st_sim* sim) {
    return sim ? sim->ops.omega_d : 0.0;
}

int st_sim_n_spins(const st_sim* sim) {
    return sim ? sim->scenario.geometry.n_spins : 0;
}

int st_sim_n_pairs(const st_sim* sim) {
    if (!sim) return 0;
    const int n = sim->scenario.geometry.n_spins;
    return n * (n - 1) / 2;
}

int st_sim_energies(st_sim* sim, double beta_z, double beta_d, double* e_z,
                    double* e_d) {
    return guarded([&] {
        if (!sim || !e_z || !e_d) throw ConfigError("null argument");
        std::tie(*e_z, *e_d) =
            spinthermo::energies(sim->ops, {beta_z, beta_d});
    });
}

int st_sim_flux(st_sim* sim, double beta_z, double beta_d, double* flux) {
    return guarded([&] {
        if (!sim || !flux) throw ConfigError("null argument");
        *flux = sim->model->avg_flux({beta_z, beta_d});
    });
}

int st_sim_rhs(st_sim* sim, double beta_z, double beta_d, double* dbeta_z,
               double* dbeta_d) {
    return guarded([&] {
        if (!sim || !dbeta_z || !dbeta_d) throw ConfigError("null argument");
        const auto d = sim->model->rhs({beta_z, beta_d});
        *dbeta_z = d[0];
        *dbeta_d = d[1];
    });
}

int st_sim_concurrence(st_sim* sim, double beta_z, double beta_d, int ne,
                       double* out) {
    return guarded([&] {
        if (!sim || !out) throw ConfigError("null argument");
        const spinthermo::ThermoState s{beta_z, beta_d};
        const spinthermo::Matrix rho =
            ne ? sim->model->ne_density(s) : spinthermo::qe_density(sim->ops, s);
        int i = 0;
        for (const auto& pc :
             spinthermo::concurrence_all(rho, sim->scenario.geometry.n_spins))
            out[i++] = pc.value;
    });
}

int st_sim_equilibrium_beta(st_sim* sim, double* beta) {
    return guarded([&] {
        if (!sim || !beta) throw ConfigError("null argument");
        *beta = spinthermo::equilibrium_beta(
            sim->ops, {sim->scenario.beta_z0, sim->scenario.beta_d0});
    });
}

}  // extern "C"
