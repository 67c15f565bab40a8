#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "spinthermo.h"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) : path(std::string("/tmp/") + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sim handle lifecycle and accessors") {
    st_sim* sim = nullptr;
    REQUIRE(st_sim_create("", &sim) == ST_OK);
    REQUIRE(sim != nullptr);

    CHECK(st_sim_n_spins(sim) == 4);
    CHECK(st_sim_n_pairs(sim) == 6);
    CHECK(st_sim_omega_d(sim) == doctest::Approx(1.0664113433812399));

    double ez = 0, ed = 0;
    REQUIRE(st_sim_energies(sim, 0.1, 7.0, &ez, &ed) == ST_OK);
    CHECK(ez == doctest::Approx(-37.50825636395135).epsilon(1e-9));
    CHECK(ed == doctest::Approx(-0.6695340967668497).epsilon(1e-9));

    double flux = 0;
    REQUIRE(st_sim_flux(sim, 0.1, 7.0, &flux) == ST_OK);
    CHECK(flux == doctest::Approx(-0.012789038224068195).epsilon(1e-6));

    double dbz = 0, dbd = 0;
    REQUIRE(st_sim_rhs(sim, 0.01, 0.5, &dbz, &dbd) == ST_OK);
    CHECK(dbd < 0);

    double c[6];
    REQUIRE(st_sim_concurrence(sim, 0.0, 0.0, 0, c) == ST_OK);
    for (double v : c) CHECK(v == doctest::Approx(0.0));

    double beq = 0;
    REQUIRE(st_sim_equilibrium_beta(sim, &beq) == ST_OK);
    CHECK(beq > 0);

    st_sim_destroy(sim);
    st_sim_destroy(nullptr);  // must be a no-op
}

TEST_CASE("error codes and messages") {
    st_sim* sim = nullptr;
    CHECK(st_sim_create("{\"ratio\":-1}", &sim) == ST_ERR_CONFIG);
    CHECK(std::string(st_last_error()).find("ratio") != std::string::npos);

    CHECK(st_sim_create("nonsense", &sim) == ST_ERR_CONFIG);
    CHECK(st_sim_create("{\"unknown_key\":1}", &sim) == ST_ERR_CONFIG);

    REQUIRE(st_sim_create("", &sim) == ST_OK);
    double dbz, dbd;
    // Deep ordered regime: the susceptibility is numerically singular.
    CHECK(st_sim_rhs(sim, 5.0, 0.1, &dbz, &dbd) == ST_ERR_NUMERIC);
    CHECK(std::string(st_last_error()).size() > 0);
    st_sim_destroy(sim);

    CHECK(st_dump("square", 45.0, "Hz", nullptr) == ST_ERR_CONFIG);
    CHECK(st_dump("chain", 45.0, "Hx", nullptr) == ST_ERR_CONFIG);
    CHECK(st_relax("{}", "/nonexistent-dir/x.csv", nullptr) == ST_ERR_CONFIG);
}

TEST_CASE("st_relax writes CSV and summary") {
    TempFile out("st_relax_test.csv");
    char* summary = nullptr;
    REQUIRE(st_relax("{\"t_max\":40,\"output_every\":10}", out.path.c_str(),
                     &summary) == ST_OK);
    REQUIRE(summary != nullptr);
    const std::string s = summary;
    st_string_free(summary);
    CHECK(s.find("beta_eq_oracle") != std::string::npos);
    CHECK(s.find("t_eq") != std::string::npos);

    const std::string csv = slurp(out.path);
    CHECK(csv.rfind("t,beta_z,beta_d,E_z,E_d,C_12", 0) == 0);
}

TEST_CASE("st_surface and st_dump write CSV") {
    TempFile surf("st_surface_test.csv");
    REQUIRE(st_surface("{}", 3, 3, 0.1, 2.0, 0, 0, surf.path.c_str()) == ST_OK);
    const std::string csv = slurp(surf.path);
    CHECK(csv.rfind("beta_z,beta_d,pair,C", 0) == 0);

    TempFile dump("st_dump_test.csv");
    REQUIRE(st_dump("rectangle", 45.0, "Hd", dump.path.c_str()) == ST_OK);
    CHECK(slurp(dump.path).rfind("row,col,re,im", 0) == 0);
}
