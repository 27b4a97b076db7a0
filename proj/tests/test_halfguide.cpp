#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "desk.hpp"
#include "floquet/pipeline.hpp"

using namespace floquet;

TEST_CASE("traces of constant-guide modes") {
    auto prob = build_problem(desk::case1());
    const FloquetMode& vp = prob.family.ordered[0];  // xi = +1, q-normalized
    REQUIRE(vp.xi.real() == doctest::Approx(1.0));

    const VectorXcd d = trace_of_mode(vp, TraceOperatorSpec::dirichlet(), prob.cell);
    // single psi_1 entry of magnitude 1/sqrt(2) (q-normalization)
    CHECK(std::abs(d(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    for (int k = 1; k < d.size(); ++k) CHECK(std::abs(d(k)) < 1e-12);

    const VectorXcd n = trace_of_mode(vp, TraceOperatorSpec::neumann(), prob.cell);
    CHECK(std::abs(n(0) - kI * vp.xi * d(0)) < 1e-12);  // d/dx1 multiplies by i*xi

    // Robin = linear combination
    const VectorXcd r = trace_of_mode(vp, TraceOperatorSpec::robin(1.0), prob.cell);
    CHECK(std::abs(r(0) - (kI * d(0) + n(0))) < 1e-12);
    CHECK(std::abs(r(0) - 2.0 * kI * d(0)) < 1e-12);
}

TEST_CASE("trace matrix assembly") {
    auto prob = build_problem(desk::case1());

    SUBCASE("Robin trace is invertible with a healthy margin") {
        auto F = assemble_F(prob.family, TraceOperatorSpec::robin(1.0), prob.cell, 6);
        CHECK(F.smallest_singular_value > 0.3);
    }

    SUBCASE("constant permittivity gives a diagonal trace matrix") {
        auto F = assemble_F(prob.family, TraceOperatorSpec::dirichlet(), prob.cell, 6);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                if (r != c) CHECK(std::abs(F.F(r, c)) < 1e-12);
        // condition number = spread of the weighted column norms
        Eigen::BDCSVD<MatrixXcd> svd(F.F);
        double mx = 0.0, mn = 1e300;
        for (int c = 0; c < 6; ++c) {
            mx = std::max(mx, std::abs(F.F(c, c)));
            mn = std::min(mn, std::abs(F.F(c, c)));
        }
        CHECK(svd.singularValues()(0) == doctest::Approx(mx));
        CHECK(svd.singularValues()(5) == doctest::Approx(mn));
    }

    SUBCASE("one-mode truncation is a nonzero scalar") {
        auto F = assemble_F(prob.family, TraceOperatorSpec::dirichlet(), prob.cell, 1);
        CHECK(F.F.rows() == 1);
        CHECK(std::abs(F.F(0, 0)) > 0.1);
    }

    SUBCASE("a trace operator annihilating a mode is reported") {
        // theta = (sqrt(2), 1) kills the xi = i*sqrt(2) column:
        // theta_D + i*xi*theta_N = sqrt(2) - sqrt(2) = 0
        TraceOperatorSpec bad{std::sqrt(2.0), 1.0};
        try {
            auto F = assemble_F(prob.family, bad, prob.cell, 6);
            // rounding may leave a nonzero column; then the matrix is
            // near-singular and the solve refuses it
            CHECK(F.smallest_singular_value < 1e-12);
            VectorXcd f = VectorXcd::Zero(6);
            f(0) = 1.0;
            CHECK_THROWS(solve_bvp(f, F, prob.family, prob.cell));
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("annihilates") != std::string::npos);
        }
    }
}

TEST_CASE("Riesz-basis conditioning plateau") {
    SUBCASE("one-mode Gram is perfectly conditioned") {
        auto prob = build_problem(desk::case1());
        auto curve = riesz_conditioning(prob.family, TraceOperatorSpec::dirichlet(),
                                        prob.cell, {1});
        CHECK(curve[0].second == doctest::Approx(1.0));
    }

    SUBCASE("constant guide plateau under both trace flavors") {
        auto prob = build_problem(desk::case1_riesz());
        for (const auto spec :
             {TraceOperatorSpec::dirichlet(), TraceOperatorSpec::robin(1.0)}) {
            auto curve = riesz_conditioning(prob.family, spec, prob.cell, {16, 32});
            CHECK(curve[1].second / curve[0].second <= 1.5);
        }
    }
}

TEST_CASE("monodromy of the constant guide") {
    auto prob = build_problem(desk::case1());
    auto F = assemble_F(prob.family, TraceOperatorSpec::robin(1.0), prob.cell, 6);
    auto mono = monodromy(prob.family, TraceOperatorSpec::robin(1.0), F, prob.cell,
                          prob.resolved, 99);
    CHECK(mono.verification_error <= 1e-7);
    CHECK(mono.spectral_radius_evanescent ==
          doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-9));
    REQUIRE(mono.jordan_blocks.size() == 6);
    CHECK(std::abs(mono.jordan_blocks[0].first - std::exp(kI * Complex(1.0, 0.0))) < 1e-9);
    CHECK(mono.jordan_blocks[0].second == 1);
    CHECK(std::abs(mono.jordan_blocks[1].first - std::exp(-std::sqrt(2.0))) < 1e-9);

    SUBCASE("powers of the trace translation decay at the evanescent radius") {
        const MatrixXcd R = F.F_unweighted * mono.jordan *
                            F.F_unweighted.partialPivLu().solve(
                                MatrixXcd::Identity(F.n_tr, F.n_tr));
        MatrixXcd D = MatrixXcd::Zero(F.n_tr, F.n_tr);
        for (int k = prob.family.n_right; k < F.n_tr; ++k) D(k, k) = 1.0;
        Eigen::BDCSVD<MatrixXcd> svf(F.F_unweighted);
        const double condF =
            svf.singularValues()(0) / svf.singularValues()(F.n_tr - 1);
        MatrixXcd P = F.F_unweighted * D *
                      F.F_unweighted.partialPivLu().solve(
                          MatrixXcd::Identity(F.n_tr, F.n_tr));
        MatrixXcd Rp = MatrixXcd::Identity(F.n_tr, F.n_tr);
        const double rho = mono.spectral_radius_evanescent;
        for (int p = 1; p <= 20; ++p) {
            Rp = R * Rp;
            Eigen::BDCSVD<MatrixXcd> sv(Rp * P);
            CHECK(sv.singularValues()(0) <= condF * std::pow(rho, p) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("monodromy block structure at the band edge") {
    auto prob = build_problem(desk::case2());
    // the degenerate pair blocks the trace-space monodromy; the Jordan data
    // still comes straight from the characteristic values
    const auto* rc = [&]() -> const ResolvedCharval* {
        for (const auto& r : prob.resolved)
            if (std::abs(r.cv.xi) < 1e-6) return &r;
        return nullptr;
    }();
    REQUIRE(rc);
    auto tr = translation_matrix(rc->cv);
    CHECK(tr.jordan.rows() == 2);
    CHECK(std::abs(tr.jordan(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(tr.jordan(0, 1) - 1.0) < 1e-12);
    auto F = assemble_F(prob.family, TraceOperatorSpec::robin(1.0), prob.cell, 6);
    CHECK_THROWS(monodromy(prob.family, TraceOperatorSpec::robin(1.0), F, prob.cell,
                           prob.resolved, 7));
}

TEST_CASE("boundary value solves") {
    auto prob = build_problem(desk::case1());
    auto F = assemble_F(prob.family, TraceOperatorSpec::robin(1.0), prob.cell, 6);

    SUBCASE("consistency: boundary data of a family member returns a unit coefficient") {
        const VectorXcd f =
            trace_of_mode(prob.family.ordered[2], TraceOperatorSpec::robin(1.0), prob.cell)
                .head(6);
        auto sol = solve_bvp(f, F, prob.family, prob.cell);
        for (int k = 0; k < 6; ++k)
            CHECK(std::abs(sol.coeffs(k) - (k == 2 ? 1.0 : 0.0)) < 1e-9);
    }

    SUBCASE("solution satisfies the boundary condition and the PDE") {
        std::mt19937_64 rng(23);
        std::normal_distribution<double> normal;
        VectorXcd f(6);
        for (int i = 0; i < 6; ++i) f(i) = Complex(normal(rng), normal(rng));
        auto sol = solve_bvp(f, F, prob.family, prob.cell);
        CHECK((F.F_unweighted * sol.coeffs - f).norm() < 1e-9);

        double worst = 0.0;
        for (int i = 1; i < 40; ++i)
            for (int j = 1; j < 40; ++j)
                worst = std::max(worst, sol.residual_at(prob.cfg.eps, 2.0 * i / 40.0,
                                                        kPi * j / 40.0));
        CHECK(worst < 1e-6);
    }

    SUBCASE("outgoing decomposition splits the propagating part explicitly") {
        VectorXcd f = VectorXcd::Zero(6);
        f(0) = 1.0;
        auto sol = solve_bvp(f, F, prob.family, prob.cell);
        for (double x1 : {0.5, 1.5})
            CHECK(std::abs(sol.evaluate(x1, 1.0) - sol.evaluate_propagating(x1, 1.0) -
                           sol.evaluate_tail(x1, 1.0)) < 1e-12);
        // the tail decays, the propagating part does not
        const double t2 = std::abs(sol.evaluate_tail(2.0, 1.0));
        const double t6 = std::abs(sol.evaluate_tail(6.0, 1.0));
        CHECK(t6 < 1e-3 * t2 + 1e-12);
    }
}

TEST_CASE("band-gap solve decays at the slowest evanescent rate") {
    auto prob = build_problem(desk::case3());
    REQUIRE(prob.family.n_right == 0);
    const int n_tr = prob.cfg.n_tr();
    auto F = assemble_F(prob.family, TraceOperatorSpec::robin(1.0), prob.cell, n_tr);
    std::mt19937_64 rng(31);
    std::normal_distribution<double> normal;
    VectorXcd f(n_tr);
    for (int i = 0; i < n_tr; ++i) f(i) = Complex(normal(rng), normal(rng));
    auto sol = solve_bvp(f, F, prob.family, prob.cell);
    const double fitted = sol.fitted_decay_rate(2.0, 6.0);
    const double expected = prob.family.ordered.front().xi.imag();
    CHECK(std::abs(fitted - expected) <= 0.05 * expected);
}

TEST_CASE("Dirichlet-to-Neumann map of the constant guide") {
    auto prob = build_problem(desk::case1());
    auto map = dtn_map(prob.family, prob.cell, 6);

    SUBCASE("diagonal action: outgoing selection") {
        // psi_1 couples to the outgoing propagating mode xi = +1
        CHECK(std::abs(map.matrix(0, 0) - kI) < 1e-9);
        // psi_2 couples to the decaying mode xi = i*sqrt(2)
        CHECK(std::abs(map.matrix(1, 1) + std::sqrt(2.0)) < 1e-9);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                if (r != c) CHECK(std::abs(map.matrix(r, c)) < 1e-10);
    }

    SUBCASE("round trip with the inverse map") {
        const MatrixXcd round =
            map.matrix * map.matrix.partialPivLu().solve(MatrixXcd::Identity(6, 6));
        for (int k = 0; k < 3; ++k) {
            VectorXcd e = VectorXcd::Zero(6);
            e(k) = 1.0;
            CHECK((round * e - e).norm() < 1e-8);
        }
    }

    SUBCASE("flux positivity: energy radiates rightward") {
        std::mt19937_64 rng(41);
        std::normal_distribution<double> normal;
        for (int trial = 0; trial < 10; ++trial) {
            VectorXcd f(6);
            for (int i = 0; i < 6; ++i) f(i) = normal(rng);  // real coefficients
            const Complex ip = f.dot(map.matrix * f);        // sum (Lambda f)_k conj(f_k)
            CHECK(ip.imag() >= -1e-10);
        }
    }
}
