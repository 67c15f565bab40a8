#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entanglement.hpp"
#include "geometry.hpp"
#include "hamiltonian.hpp"
#include "oracles.hpp"
#include "thermo.hpp"

using namespace spinthermo;

namespace {

// |Bell(m,n)> (x) |00...> for the remaining spins of a 4-spin register.
Matrix bell_embedded(int m, int n) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    const int bm = 4 - m, bn = 4 - n;
    psi(0) = 1.0 / std::sqrt(2.0);                 // |0...0>
    psi((1 << bm) | (1 << bn)) = psi(0);           // both flipped
    return psi * psi.adjoint();
}

}  // namespace

TEST_CASE("maximally entangled and separable limits") {
    for (auto [m, n] : {std::pair{1, 2}, {1, 4}, {2, 3}}) {
        const PairConcurrence c = concurrence_pair(bell_embedded(m, n), m, n, 4);
        CHECK(c.value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(c.m == m);
        CHECK(c.n == n);
    }

    Matrix pure = Matrix::Zero(16, 16);
    pure(0, 0) = 1;  // |0000>
    for (const PairConcurrence& c : concurrence_all(pure, 4))
        CHECK(c.value == doctest::Approx(0.0));

    const Matrix mixed = Matrix::Identity(16, 16) / 16.0;
    for (const PairConcurrence& c : concurrence_all(mixed, 4))
        CHECK(c.value == doctest::Approx(0.0));
}

TEST_CASE("Werner state concurrence") {
    // p |Bell><Bell| + (1-p) I/4 on a plain 2-spin register.
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    const double p = 0.9;
    const Matrix rho =
        p * psi * psi.adjoint() + (1 - p) * Matrix::Identity(4, 4) / 4.0;
    const PairConcurrence c = concurrence_pair(rho, 1, 2, 2);
    CHECK(c.value == doctest::Approx(0.85).epsilon(1e-8));

    // Below p = 1/3 the state is separable.
    const double q = 0.2;
    const Matrix sep =
        q * psi * psi.adjoint() + (1 - q) * Matrix::Identity(4, 4) / 4.0;
    CHECK(concurrence_pair(sep, 1, 2, 2).value == doctest::Approx(0.0));
}

TEST_CASE("monogamy on a Bell-pair product") {
    // Bell(1,2) (x) Bell(3,4)
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(4);
    b(0) = b(3) = 1.0 / std::sqrt(2.0);
    const Matrix rho = oracle::kron(Matrix(b * b.adjoint()), Matrix(b * b.adjoint()));
    const auto all = concurrence_all(rho, 4);
    REQUIRE(all.size() == 6);
    CHECK(all[0].value == doctest::Approx(1.0));  // (1,2)
    CHECK(all[5].value == doctest::Approx(1.0));  // (3,4)
    for (int i : {1, 2, 3, 4}) CHECK(all[i].value == doctest::Approx(0.0));
}

TEST_CASE("pure-state formula on random embedded states") {
    // |psi>(m,n) (x) |00>(rest): concurrence must equal 2|ad - bc|.
    std::mt19937 gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXcd pair_state = oracle::random_pure_state(4, gen);
        Matrix rho2 = pair_state * pair_state.adjoint();
        Matrix rest = Matrix::Zero(4, 4);
        rest(0, 0) = 1;
        const Matrix rho = oracle::kron(rho2, rest);  // spins (1,2) entangled
        const double expect =
            2.0 * std::abs(pair_state(0) * pair_state(3) -
                           pair_state(1) * pair_state(2));
        CHECK(concurrence_pair(rho, 1, 2, 4).value ==
              doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("pair-order invariance and lambda bookkeeping") {
    const Matrix rho = bell_embedded(2, 4);
    const PairConcurrence a = concurrence_pair(rho, 2, 4, 4);
    const PairConcurrence b = concurrence_pair(rho, 4, 2, 4);
    CHECK(a.value == doctest::Approx(b.value));
    CHECK(a.m == 2);
    CHECK(b.m == 2);
    CHECK(a.lambdas[0] >= a.lambdas[1]);
    CHECK(a.lambdas[1] >= a.lambdas[2]);
    CHECK(a.lambdas[2] >= a.lambdas[3]);
    CHECK(a.lambdas[3] >= 0.0);
    CHECK(a.value == doctest::Approx(std::max(
                         0.0, a.lambdas[0] - a.lambdas[1] - a.lambdas[2] -
                                  a.lambdas[3])));
}

TEST_CASE("ring thermal state respects cyclic symmetry") {
    const OperatorSet ops = build_operator_set(build_ring(4), 45.0);
    const Matrix rho = qe_density(ops, {0.02, 2.5});
    const auto all = concurrence_all(rho, 4);
    // Edges (1,2), (2,3), (3,4), (1,4) are equivalent under rotation.
    const double edge = all[0].value;
    CHECK(all[3].value == doctest::Approx(edge).epsilon(1e-8));
    CHECK(all[5].value == doctest::Approx(edge).epsilon(1e-8));
    CHECK(all[2].value == doctest::Approx(edge).epsilon(1e-8));
    // Diagonals (1,3), (2,4) are equivalent too.
    CHECK(all[1].value == doctest::Approx(all[4].value).epsilon(1e-8));
}

TEST_CASE("high-temperature fade") {
    const OperatorSet ops = build_operator_set(build_chain(4), 45.0);
    for (double scale : {1e-3, 1e-2}) {
        const Matrix rho = qe_density(ops, {scale / 45.0, scale});
        for (const PairConcurrence& c : concurrence_all(rho, 4))
            CHECK(c.value < 1e-6);
    }
}
