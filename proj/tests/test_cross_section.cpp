#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "floquet/cross_section.hpp"
#include "floquet/quadrature.hpp"

using namespace floquet;

TEST_CASE("sorted transverse eigenvalues match the closed forms") {
    SUBCASE("dirichlet L=pi") {
        auto b = build_basis({BoundaryKind::Dirichlet}, kPi, 4);
        for (int n = 1; n <= 4; ++n) CHECK(b.kappa(n) == doctest::Approx(n).epsilon(1e-15));
    }
    SUBCASE("neumann L=pi includes the constant mode") {
        auto b = build_basis({BoundaryKind::Neumann}, kPi, 3);
        CHECK(b.kappa(1) == 0.0);
        CHECK(b.kappa(2) == doctest::Approx(1.0));
        CHECK(b.kappa(3) == doctest::Approx(2.0));
    }
    SUBCASE("mixed L=pi: half-integer ladder") {
        auto b = build_basis({BoundaryKind::Mixed}, kPi, 3);
        CHECK(b.kappa(1) == doctest::Approx(0.5));
        CHECK(b.kappa(2) == doctest::Approx(1.5));
        CHECK(b.kappa(3) == doctest::Approx(2.5));
    }
    SUBCASE("quasi-periodic beta=pi/2, L=2pi") {
        auto b = build_basis({BoundaryKind::QuasiPeriodic, kPi / 2}, 2 * kPi, 4);
        CHECK(b.kappa(1) == doctest::Approx(0.25));
        CHECK(b.kappa(2) == doctest::Approx(0.75));
        CHECK(b.kappa(3) == doctest::Approx(1.25));
        CHECK(b.kappa(4) == doctest::Approx(1.75));
    }
}

TEST_CASE("shift law of the sorted sequence") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> len(0.5, 5.0);
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann, BoundaryKind::Mixed,
                      BoundaryKind::QuasiPeriodic}) {
        const double L = len(rng);
        BoundaryCondition bc{kind, 1.1};
        auto b = build_basis(bc, L, 14);
        for (int l = 1; 2 * l + 2 <= b.size(); ++l) {
            CHECK(b.kappa(2 * l + 1) ==
                  doctest::Approx(b.kappa(1) + 2.0 * kPi / L * l).epsilon(1e-12));
            CHECK(b.kappa(2 * l + 2) ==
                  doctest::Approx(b.kappa(2) + 2.0 * kPi / L * l).epsilon(1e-12));
        }
    }
}

TEST_CASE("eigenfunction point values") {
    auto d = build_basis({BoundaryKind::Dirichlet}, kPi, 4);
    CHECK(d.psi(1, kPi / 2).real() == doctest::Approx(std::sqrt(2.0 / kPi)));
    CHECK(d.psi(1, kPi / 2).imag() == 0.0);

    auto n = build_basis({BoundaryKind::Neumann}, kPi, 3);
    CHECK(n.psi(1, 0.123).real() == doctest::Approx(std::sqrt(1.0 / kPi)));
    CHECK(n.psi(1, 2.5).real() == doctest::Approx(std::sqrt(1.0 / kPi)));

    auto q = build_basis({BoundaryKind::QuasiPeriodic, 0.0}, 1.0, 5);
    // raw k = 1 sits at some sorted position; find it through the index map
    int pos = 0;
    for (int i = 1; i <= q.size(); ++i)
        if (q.raw_index(i) == 1) pos = i;
    REQUIRE(pos > 0);
    const Complex v = q.psi(pos, 0.25);
    CHECK(v.real() == doctest::Approx(std::cos(kPi / 2)).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(1.0));
}

TEST_CASE("quasi-periodic degenerate pairs keep both raw indices, lower first") {
    auto q = build_basis({BoundaryKind::QuasiPeriodic, 0.0}, 1.0, 5);
    CHECK(q.kappa(1) == 0.0);
    CHECK(q.raw_index(1) == 0);
    CHECK(q.kappa(2) == doctest::Approx(q.kappa(3)));
    CHECK(q.raw_index(2) == -1);  // tie-break: lower raw index first
    CHECK(q.raw_index(3) == 1);
}

TEST_CASE("orthonormality under Gauss quadrature") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> len(0.5, 5.0);
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann, BoundaryKind::Mixed,
                      BoundaryKind::QuasiPeriodic}) {
        const double L = len(rng);
        auto b = build_basis({kind, 2.3}, L, 6);
        auto rule = gauss_on(96, 0.0, L);
        for (int m = 1; m <= 6; ++m)
            for (int n = 1; n <= 6; ++n) {
                Complex ip = 0.0;
                for (size_t i = 0; i < rule.nodes.size(); ++i)
                    ip += rule.weights[i] * b.psi(m, rule.nodes[i]) *
                          std::conj(b.psi(n, rule.nodes[i]));
                CHECK(std::abs(ip - (m == n ? 1.0 : 0.0)) < 1e-10);
            }
    }
}

TEST_CASE("analytic second derivative matches -kappa^2 psi") {
    for (auto kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann, BoundaryKind::Mixed,
                      BoundaryKind::QuasiPeriodic}) {
        auto b = build_basis({kind, 0.7}, 1.7, 8);
        for (int n = 1; n <= 8; ++n)
            for (double t : {0.2, 0.9, 1.5}) {
                const Complex lhs = -b.psi_dd(n, t);
                const Complex rhs = b.kappa(n) * b.kappa(n) * b.psi(n, t);
                CHECK(std::abs(lhs - rhs) < 1e-8);
            }
    }
}

TEST_CASE("half-gap constant per family") {
    CHECK(build_basis({BoundaryKind::Dirichlet}, 2.0, 4).delta_gamma() ==
          doctest::Approx(kPi / 4.0));
    CHECK(build_basis({BoundaryKind::Neumann}, 0.5, 4).delta_gamma() == doctest::Approx(kPi));
    CHECK(build_basis({BoundaryKind::Mixed}, 1.0, 4).delta_gamma() ==
          doctest::Approx(kPi / 2.0));
    // beta not in {0, pi}: min_l |l*pi - beta| / L
    CHECK(build_basis({BoundaryKind::QuasiPeriodic, 0.4}, 2.0, 4).delta_gamma() ==
          doctest::Approx(0.2));
    CHECK(build_basis({BoundaryKind::QuasiPeriodic, 3.0}, 1.0, 4).delta_gamma() ==
          doctest::Approx(kPi - 3.0));
    // beta in {0, pi}: pi / L
    CHECK(build_basis({BoundaryKind::QuasiPeriodic, 0.0}, 2.0, 4).delta_gamma() ==
          doctest::Approx(kPi / 2.0));
    CHECK(build_basis({BoundaryKind::QuasiPeriodic, kPi}, 1.0, 4).delta_gamma() ==
          doctest::Approx(kPi));
    // positive for a spread of admissible beta
    for (double beta : {0.01, 1.0, 2.0, kPi - 0.01, kPi + 0.5, 6.0})
        CHECK(build_basis({BoundaryKind::QuasiPeriodic, beta}, 1.3, 4).delta_gamma() > 0.0);
}

TEST_CASE("sobolev weights") {
    auto b = build_basis({BoundaryKind::Neumann}, kPi, 4);
    CHECK(b.sobolev_weight(1, 0.5) == doctest::Approx(1.0));  // kappa = 0
    CHECK(b.sobolev_weight(3, 0.5) == doctest::Approx(std::sqrt(5.0)));   // kappa = 2
    CHECK(b.sobolev_weight(4, -0.5) == doctest::Approx(1.0 / std::sqrt(10.0)));  // kappa = 3
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_basis({BoundaryKind::Dirichlet}, -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_basis({BoundaryKind::Dirichlet}, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_basis({BoundaryKind::QuasiPeriodic, -0.5}, 1.0, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_basis({BoundaryKind::QuasiPeriodic, 2.0 * kPi}, 1.0, 4),
                    std::invalid_argument);
    auto b = build_basis({BoundaryKind::Dirichlet}, 1.0, 4);
    CHECK_THROWS_AS(b.psi(5, 0.5), std::out_of_range);
    CHECK_THROWS_AS(b.kappa(0), std::out_of_range);
}
