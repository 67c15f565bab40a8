#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geometry.hpp"

using namespace spinthermo;

namespace {
constexpr double kPi = std::numbers::pi;

double coupling(const SpinGeometry& g, int j, int k) {
    for (const auto& p : g.pairs)
        if (p.j == j && p.k == k) return p.d;
    FAIL("pair not found");
    return 0;
}

double phi_of(const SpinGeometry& g, int j, int k) {
    for (const auto& p : g.pairs)
        if (p.j == j && p.k == k) return p.phi;
    FAIL("pair not found");
    return 0;
}
}  // namespace

TEST_CASE("chain couplings follow the inverse-cube law") {
    const SpinGeometry g = build_chain(4);
    CHECK(g.pairs.size() == 6);
    CHECK(coupling(g, 1, 2) == doctest::Approx(1.0));
    CHECK(coupling(g, 1, 3) == doctest::Approx(1.0 / 8));
    CHECK(coupling(g, 1, 4) == doctest::Approx(1.0 / 27));
    for (const auto& p : g.pairs) {
        CHECK(p.theta == doctest::Approx(kPi / 2));
        CHECK(p.phi == doctest::Approx(kPi / 2));
    }

    const SpinGeometry g2 = build_chain(2);
    CHECK(g2.pairs.size() == 1);
    CHECK(g2.pairs[0].d == doctest::Approx(1.0));
}

TEST_CASE("ring chord couplings and orientations") {
    const SpinGeometry g = build_ring(4);
    CHECK(coupling(g, 1, 2) == doctest::Approx(1.0));
    CHECK(coupling(g, 2, 3) == doctest::Approx(1.0));
    // Diagonal: (sin(pi/4)/sin(pi/2))^3 = (sqrt(2)/2)^3
    CHECK(coupling(g, 1, 3) == doctest::Approx(0.35355339059327373));
    CHECK(coupling(g, 2, 4) == doctest::Approx(0.35355339059327373));

    CHECK(phi_of(g, 1, 2) == doctest::Approx(kPi / 2));
    CHECK(phi_of(g, 1, 3) == doctest::Approx(3 * kPi / 4));
    CHECK(phi_of(g, 1, 4) == doctest::Approx(kPi));
    CHECK(phi_of(g, 2, 3) == doctest::Approx(kPi));
    CHECK(phi_of(g, 2, 4) == doctest::Approx(5 * kPi / 4));
    CHECK(phi_of(g, 3, 4) == doctest::Approx(3 * kPi / 2));

    // Triangle: every chord is a nearest-neighbor chord.
    for (const auto& p : build_ring(3).pairs) CHECK(p.d == doctest::Approx(1.0));
}

TEST_CASE("rectangle couplings") {
    const SpinGeometry g = build_rectangle();
    CHECK(coupling(g, 1, 2) == doctest::Approx(1.0));
    CHECK(coupling(g, 3, 4) == doctest::Approx(1.0));
    CHECK(coupling(g, 2, 3) == doctest::Approx(1.0 / (3 * std::sqrt(3.0))));
    CHECK(coupling(g, 2, 3) == doctest::Approx(0.19245008972987526));
    CHECK(coupling(g, 1, 4) == doctest::Approx(0.19245008972987526));
    CHECK(coupling(g, 1, 3) == doctest::Approx(0.125));
    CHECK(coupling(g, 2, 4) == doctest::Approx(0.125));
    CHECK(phi_of(g, 1, 3) == doctest::Approx(std::acos(-std::sqrt(3.0) / 2)));
    CHECK(phi_of(g, 1, 3) == doctest::Approx(5 * kPi / 6));
}

TEST_CASE("validation rejects malformed geometries") {
    SpinGeometry g = build_chain(4);
    g.pairs.pop_back();
    CHECK_THROWS_AS(validate(g), DomainError);

    g = build_chain(4);
    g.pairs[1] = g.pairs[0];
    CHECK_THROWS_AS(validate(g), DomainError);

    g = build_chain(4);
    g.pairs[0].d = 0.0;
    CHECK_THROWS_AS(validate(g), DomainError);

    g = build_chain(4);
    g.pairs[0].j = 2;
    g.pairs[0].k = 1;
    CHECK_THROWS_AS(validate(g), DomainError);

    CHECK_THROWS_AS(build_chain(1), DomainError);
    CHECK_THROWS_AS(build_ring(2), DomainError);
}

TEST_CASE("build_custom sorts and validates") {
    std::vector<PairCoupling> pairs;
    for (const auto& p : build_chain(3).pairs) pairs.insert(pairs.begin(), p);
    const SpinGeometry g = build_custom(3, pairs);
    CHECK(g.pairs[0].j == 1);
    CHECK(g.pairs[0].k == 2);
    CHECK(g.pairs[2].j == 2);
    CHECK(g.label == "custom");

    pairs.pop_back();
    CHECK_THROWS_AS(build_custom(3, pairs), DomainError);
}
