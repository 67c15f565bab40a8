#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace spinthermo {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double phi) {
    phi = std::fmod(phi, 2 * kPi);
    return phi < 0 ? phi + 2 * kPi : phi;
}
}  // namespace

void validate(const SpinGeometry& geom) {
    if (geom.n_spins < 2) throw DomainError("geometry: need at least two spins");
    const std::size_t expected =
        std::size_t(geom.n_spins) * (geom.n_spins - 1) / 2;
    if (geom.pairs.size() != expected)
        throw DomainError("geometry: expected " + std::to_string(expected) +
                          " pairs, got " + std::to_string(geom.pairs.size()));
    std::set<std::pair<int, int>> seen;
    for (const auto& p : geom.pairs) {
        if (p.j < 1 || p.k > geom.n_spins || p.j >= p.k)
            throw DomainError("geometry: pair indices must satisfy 1 <= j < k <= N");
        if (!seen.insert({p.j, p.k}).second)
            throw DomainError("geometry: duplicate pair (" + std::to_string(p.j) +
                              "," + std::to_string(p.k) + ")");
        if (!(p.d > 0.0) || !std::isfinite(p.d))
            throw DomainError("geometry: coupling D must be positive and finite");
        if (!std::isfinite(p.theta) || !std::isfinite(p.phi))
            throw DomainError("geometry: angles must be finite");
    }
}

SpinGeometry build_chain(int n_spins) {
    if (n_spins < 2) throw DomainError("build_chain: need at least two spins");
    SpinGeometry geom{n_spins, {}, "chain"};
    for (int j = 1; j <= n_spins; ++j)
        for (int k = j + 1; k <= n_spins; ++k) {
            const double sep = k - j;
            geom.pairs.push_back({j, k, 1.0 / (sep * sep * sep), kPi / 2, kPi / 2});
        }
    validate(geom);
    return geom;
}

SpinGeometry build_ring(int n_spins) {
    if (n_spins < 3) throw DomainError("build_ring: need at least three spins");
    SpinGeometry geom{n_spins, {}, "ring"};
    // Sites on a unit circle at 2*pi*(j-1)/N - pi/4; the offset reproduces
    // the reference phi table for N=4 (phi_12 = pi/2, phi_23 = pi, ...).
    auto site_angle = [n_spins](int j) {
        return 2 * kPi * (j - 1) / n_spins - kPi / 4;
    };
    for (int j = 1; j <= n_spins; ++j)
        for (int k = j + 1; k <= n_spins; ++k) {
            const double ratio =
                std::sin(kPi / n_spins) / std::sin(kPi * (k - j) / n_spins);
            const double aj = site_angle(j);
            const double ak = site_angle(k);
            const double phi = wrap_angle(
                std::atan2(std::sin(ak) - std::sin(aj), std::cos(ak) - std::cos(aj)));
            geom.pairs.push_back({j, k, ratio * ratio * ratio, kPi / 2, phi});
        }
    validate(geom);
    return geom;
}

SpinGeometry build_rectangle() {
    SpinGeometry geom{4, {}, "rectangle"};
    const double d_long = 1.0 / (3.0 * std::sqrt(3.0));
    const double d_diag = 1.0 / 8.0;
    geom.pairs = {
        {1, 2, 1.0, kPi / 2, kPi / 2},
        {1, 3, d_diag, kPi / 2, std::acos(-std::sqrt(3.0) / 2)},
        {1, 4, d_long, kPi / 2, kPi},
        {2, 3, d_long, kPi / 2, kPi},
        {2, 4, d_diag, kPi / 2, std::acos(std::sqrt(3.0) / 2) + kPi},
        {3, 4, 1.0, kPi / 2, 3 * kPi / 2},
    };
    validate(geom);
    return geom;
}

SpinGeometry build_custom(int n_spins, std::vector<PairCoupling> pairs) {
    SpinGeometry geom{n_spins, std::move(pairs), "custom"};
    std::sort(geom.pairs.begin(), geom.pairs.end(),
              [](const PairCoupling& a, const PairCoupling& b) {
                  return std::tie(a.j, a.k) < std::tie(b.j, b.k);
              });
    validate(geom);
    return geom;
}

}  // namespace spinthermo
