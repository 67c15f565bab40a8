#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "thermo.hpp"

namespace spinthermo {

/// Invalid or inconsistent scenario configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Scenario {
    SpinGeometry geometry;
    double ratio = 45.0;            // omega_0 / omega_d
    double beta_z0 = 1e-4;
    double beta_d0 = 7e-3;
    double epsilon_factor = 0.01;   // epsilon = factor * omega_d
    double t_max = 2000.0;
    double tol = 1e-8;
    double output_every = 0.0;      // 0 picks t_max/199 (200 rows)
    double fade_threshold = 1e-3;
    std::vector<std::pair<int, int>> pairs;  // empty means all pairs
};

/// Parses and validates a scenario from a JSON document. Unknown keys are
/// rejected. Throws ConfigError with a field-level message.
Scenario parse_scenario(const std::string& json_text);

Scenario default_scenario();

struct RelaxSummary {
    double beta_z_end = 0.0;
    double beta_d_end = 0.0;
    double beta_eq_oracle = 0.0;    // independent bisection endpoint
    double t_fade = 0.0;            // first time all selected C < threshold
    double t_eq = 0.0;              // first time |bz - bd| < 1e-3 max(bz, bd)
    bool converged = false;
};

std::string to_json(const RelaxSummary& summary);

/// Integrates the scenario, writes the trajectory CSV
/// (t,beta_z,beta_d,E_z,E_d,C_12,...) and returns the summary.
RelaxSummary run_relax(const Scenario& scenario, std::ostream& csv);

/// Concurrence over a (beta_z, beta_d) grid on the quasi-equilibrium state
/// (or rho_ne with ne_surface). Long-format CSV beta_z,beta_d,pair,C; with
/// `overlay` the diagonal cut and the scenario's trajectory path are
/// appended as commented sections.
void run_surface(const Scenario& scenario, int nz, int nd, double zmax,
                 double dmax, bool overlay, bool ne_surface, std::ostream& csv);

/// Emits one operator of the scenario as sparse CSV rows (row,col,re,im).
/// Valid names: Hz, Hdd, Hd, Hnd, H, K.
void run_dump(const SpinGeometry& geom, double ratio, const std::string& op_name,
              std::ostream& csv);

/// Shortest round-trip decimal formatting.
std::string format_double(double value);

}  // namespace spinthermo
