// Command-line front end; talks to the library only through spinthermo.h.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinthermo.h"

namespace {

constexpr int kExitConfig = 2;

int fail(int code, const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return code;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool parse_grid(const std::string& spec, int& nz, int& nd) {
    const auto x = spec.find('x');
    if (x == std::string::npos) return false;
    try {
        std::size_t a = 0, b = 0;
        nz = std::stoi(spec.substr(0, x), &a);
        nd = std::stoi(spec.substr(x + 1), &b);
        return a == x && b == spec.size() - x - 1 && nz > 0 && nd > 0;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-temperature relaxation and entanglement simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path;

    auto* relax = app.add_subcommand(
        "relax", "Integrate a relaxation scenario and emit the trajectory CSV");
    relax->add_option("--config", config_path, "Scenario JSON file")->required();
    relax->add_option("--out", out_path, "Trajectory CSV path (default stdout)");

    std::string grid_spec;
    double zmax = 0, dmax = 0;
    bool overlay = false, ne_surface = false;
    auto* surface = app.add_subcommand(
        "surface", "Concurrence over a (beta_z, beta_d) grid as long-format CSV");
    surface->add_option("--config", config_path, "Scenario JSON file")->required();
    surface->add_option("--grid", grid_spec, "Grid size as <nz>x<nd>")->required();
    surface->add_option("--zmax", zmax, "Largest beta_z")->required();
    surface->add_option("--dmax", dmax, "Largest beta_d")->required();
    surface->add_flag("--overlay", overlay,
                      "Append the diagonal cut and the relaxation path");
    surface->add_flag("--ne-surface", ne_surface,
                      "Evaluate on the non-equilibrium operator");
    surface->add_option("--out", out_path, "Surface CSV path (default stdout)");

    std::string geometry, op_name;
    double ratio = 45.0;
    auto* dump = app.add_subcommand("dump", "Emit one operator as sparse CSV");
    dump->add_option("--geometry", geometry, "chain, ring, or rectangle")
        ->required();
    dump->add_option("--ratio", ratio, "omega_0 / omega_d")->required();
    dump->add_option("--op", op_name, "Hz, Hdd, Hd, Hnd, H, or K")->required();
    dump->add_option("--out", out_path, "Operator CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const char* out = out_path.empty() ? nullptr : out_path.c_str();

    if (dump->parsed()) {
        const int rc = st_dump(geometry.c_str(), ratio, op_name.c_str(), out);
        return rc == ST_OK ? 0 : fail(rc, st_last_error());
    }

    std::string config;
    if (!read_file(config_path, config))
        return fail(kExitConfig, "cannot read config file " + config_path);

    if (relax->parsed()) {
        char* summary = nullptr;
        const int rc = st_relax(config.c_str(), out, &summary);
        if (rc != ST_OK) return fail(rc, st_last_error());
        // Keep the summary out of the CSV stream when it goes to stdout.
        std::fprintf(out ? stdout : stderr, "%s\n", summary);
        st_string_free(summary);
        return 0;
    }

    int nz = 0, nd = 0;
    if (!parse_grid(grid_spec, nz, nd))
        return fail(kExitConfig, "grid must look like 40x40");
    const int rc = st_surface(config.c_str(), nz, nd, zmax, dmax,
                              overlay ? 1 : 0, ne_surface ? 1 : 0, out);
    return rc == ST_OK ? 0 : fail(rc, st_last_error());
}
