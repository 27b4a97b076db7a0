#include "floquet/halfguide.hpp"

#include <cmath>
#include <random>

#include "floquet/quadrature.hpp"

namespace floquet {

VectorXcd trace_of_mode(const FloquetMode& v, const TraceOperatorSpec& spec,
                        const CellMatrices& cell) {
    const auto& trunc = cell.trunc;
    VectorXcd a = VectorXcd::Zero(trunc.M2);
    VectorXcd b = VectorXcd::Zero(trunc.M2);
    for (int f = 0; f < trunc.dim(); ++f) {
        const int k = trunc.l2_of(f) - 1;
        const Complex mu = kI * (v.xi + 2.0 * kPi * trunc.l1_of(f));
        a(k) += v.parts[0](f);
        b(k) += mu * v.parts[0](f);
        if (v.order >= 1) b(k) += v.parts[1](f);
    }
    return spec.theta_D * a + spec.theta_N * b;
}

TraceMatrix assemble_F(const ModeFamily& family, const TraceOperatorSpec& spec,
                       const CellMatrices& cell, int n_tr) {
    if (n_tr < 1) throw std::invalid_argument("trace truncation must be >= 1");
    if (static_cast<int>(family.ordered.size()) < n_tr)
        throw std::invalid_argument("mode family holds " +
                                    std::to_string(family.ordered.size()) +
                                    " modes, need " + std::to_string(n_tr));
    if (cell.trunc.M2 < n_tr)
        throw std::invalid_argument("transverse truncation smaller than the trace truncation");

    TraceMatrix tm;
    tm.spec = spec;
    tm.n_tr = n_tr;
    tm.F_unweighted.resize(n_tr, n_tr);
    tm.weights.resize(n_tr);
    const double s = spec.target_space_order();
    for (int k = 1; k <= n_tr; ++k)
        tm.weights(k - 1) = cell.basis->sobolev_weight(k, s / 2.0);
    for (int j = 0; j < n_tr; ++j) {
        const VectorXcd col = trace_of_mode(family.ordered[j], spec, cell);
        if (col.norm() == 0.0)
            throw std::runtime_error("trace operator annihilates mode " + std::to_string(j + 1));
        tm.F_unweighted.col(j) = col.head(n_tr);
    }
    tm.F = tm.weights.asDiagonal() * tm.F_unweighted;
    Eigen::BDCSVD<MatrixXcd> svd(tm.F);
    tm.smallest_singular_value = svd.singularValues()(n_tr - 1);
    return tm;
}

std::vector<std::pair<int, double>> riesz_conditioning(const ModeFamily& family,
                                                       const TraceOperatorSpec& spec,
                                                       const CellMatrices& cell,
                                                       const std::vector<int>& sizes) {
    std::vector<std::pair<int, double>> out;
    for (int n_tr : sizes) {
        const TraceMatrix tm = assemble_F(family, spec, cell, n_tr);
        const MatrixXcd G = tm.F.adjoint() * tm.F;
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
        const double cond = es.eigenvalues()(n_tr - 1) / es.eigenvalues()(0);
        out.emplace_back(n_tr, cond);
    }
    return out;
}

MonodromyForm monodromy(const ModeFamily& family, const TraceOperatorSpec& spec,
                        const TraceMatrix& F, const CellMatrices& cell,
                        const std::vector<ResolvedCharval>& resolved, uint64_t seed,
                        int trials) {
    (void)spec;
    (void)cell;
    const int n = F.n_tr;
    MonodromyForm mono;

    // Jordan structure copied from the characteristic values; the per-chain
    // translation matrices give the action of T on the stored (scaled) modes.
    MatrixXcd M = MatrixXcd::Zero(n, n);  // translation action in mode coordinates
    mono.jordan = MatrixXcd::Zero(n, n);
    mono.basis_change = MatrixXcd::Identity(n, n);
    std::vector<bool> placed(n, false);
    for (int j = 0; j < n; ++j) {
        if (placed[j]) continue;
        const auto& mj = family.ordered[j];
        if (mj.cls == ModeClass::DegeneratePropagating)
            throw std::runtime_error(
                "monodromy over degenerate propagating modes is not supported");
        const bool in_chain =
            mj.charval_id >= 0 && mj.chain_id >= 0 &&
            resolved[mj.charval_id].cv.partial_null_multiplicities[mj.chain_id] > 1;
        if (!in_chain) {
            const Complex lam = std::exp(kI * mj.xi);
            M(j, j) = lam;
            mono.jordan(j, j) = lam;
            mono.jordan_blocks.emplace_back(lam, 1);
            placed[j] = true;
            continue;
        }
        // collect the whole chain among the first n modes
        std::vector<int> members;
        for (int k = 0; k < n; ++k) {
            const auto& mk = family.ordered[k];
            if (mk.charval_id == mj.charval_id && mk.chain_id == mj.chain_id)
                members.push_back(k);
        }
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            return family.ordered[a].chain_pos < family.ordered[b].chain_pos;
        });
        const int r = static_cast<int>(members.size());
        const auto& cv = resolved[mj.charval_id].cv;
        if (r < cv.partial_null_multiplicities[mj.chain_id])
            throw std::runtime_error("trace truncation cuts a Jordan chain");
        CharacteristicValue cv1 = cv;
        cv1.partial_null_multiplicities = {r};
        TranslationMatrices tr = translation_matrix(cv1);
        // per-mode scalings v'_k = s_k v_k conjugate the chain representation:
        // M' = D^{-1} raw D and S' = D^{-1} S
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                const Complex sa = family.ordered[members[a]].scale;
                const Complex sb = family.ordered[members[b]].scale;
                M(members[a], members[b]) = tr.raw(a, b) * sb / sa;
                mono.jordan(members[a], members[b]) = tr.jordan(a, b);
                mono.basis_change(members[a], members[b]) = tr.basis_change(a, b) / sa;
            }
        mono.jordan_blocks.emplace_back(std::exp(kI * cv.xi_work), r);
        for (int m : members) placed[m] = true;
    }

    // spectral radius on the decaying span
    mono.spectral_radius_evanescent = 0.0;
    for (const auto& m : family.ordered)
        if (m.cls == ModeClass::RightEvanescent) {
            mono.spectral_radius_evanescent = std::exp(-m.xi.imag());
            break;
        }

    // verification: R (trace v) = trace(T v) with R = (F S) J (F S)^{-1}
    const MatrixXcd FS = F.F_unweighted * mono.basis_change;
    Eigen::PartialPivLU<MatrixXcd> lu(FS);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        VectorXcd a(n);
        for (int i = 0; i < n; ++i) a(i) = Complex(normal(rng), normal(rng));
        a /= a.norm();
        const VectorXcd trace_v = F.F_unweighted * a;
        const VectorXcd trace_Tv = F.F_unweighted * (M * a);
        const VectorXcd via_jordan = FS * (mono.jordan * lu.solve(trace_v));
        worst = std::max(worst, (via_jordan - trace_Tv).norm() / trace_v.norm());
    }
    mono.verification_error = worst;
    if (worst > 1e-6)
        throw std::runtime_error("monodromy verification failed: trace/mode data inconsistent (" +
                                 std::to_string(worst) + ")");
    return mono;
}

Complex HalfStripSolution::evaluate(double x1, double x2) const {
    Complex v = 0.0;
    for (int j = 0; j < coeffs.size(); ++j)
        v += coeffs(j) * evaluate_mode(family->ordered[j], *cell->basis, cell->trunc, x1, x2);
    return v;
}

Complex HalfStripSolution::evaluate_propagating(double x1, double x2) const {
    Complex v = 0.0;
    for (int j = 0; j < std::min<int>(n_right, coeffs.size()); ++j)
        v += coeffs(j) * evaluate_mode(family->ordered[j], *cell->basis, cell->trunc, x1, x2);
    return v;
}

Complex HalfStripSolution::evaluate_tail(double x1, double x2) const {
    return evaluate(x1, x2) - evaluate_propagating(x1, x2);
}

double HalfStripSolution::residual_at(const PermittivityCell& eps, double x1, double x2) const {
    Complex lap = 0.0, val = 0.0;
    for (int j = 0; j < coeffs.size(); ++j) {
        const auto& m = family->ordered[j];
        lap += coeffs(j) * evaluate_mode_laplacian(m, *cell->basis, cell->trunc, x1, x2);
        val += coeffs(j) * evaluate_mode(m, *cell->basis, cell->trunc, x1, x2);
    }
    return std::abs(lap + cell->omega2 * eps.value(x1, x2) * val);
}

double HalfStripSolution::fitted_decay_rate(double x1_from, double x1_to, int n_samples,
                                            int n_quad) const {
    if (n_samples < 2) throw std::invalid_argument("need at least two samples for the fit");
    auto rule = gauss_on(n_quad, 0.0, cell->basis->L());
    std::vector<double> xs, ys;
    for (int s = 0; s < n_samples; ++s) {
        const double x1 = x1_from + (x1_to - x1_from) * s / (n_samples - 1);
        double norm2 = 0.0;
        for (int i = 0; i < n_quad; ++i)
            norm2 += rule.weights[i] * std::norm(evaluate(x1, rule.nodes[i]));
        xs.push_back(x1);
        ys.push_back(0.5 * std::log(norm2));
    }
    // least-squares slope
    double mx = 0, my = 0;
    for (int i = 0; i < n_samples; ++i) mx += xs[i], my += ys[i];
    mx /= n_samples, my /= n_samples;
    double num = 0, den = 0;
    for (int i = 0; i < n_samples; ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return -num / den;  // decay rate
}

HalfStripSolution solve_bvp(const VectorXcd& f_psi, const TraceMatrix& F,
                            const ModeFamily& family, const CellMatrices& cell) {
    if (f_psi.size() != F.n_tr)
        throw std::invalid_argument("boundary data length does not match the trace truncation");
    const double scale = F.F.cwiseAbs().maxCoeff();
    if (F.smallest_singular_value < 1e-10 * std::max(1.0, scale))
        throw std::runtime_error("trace matrix is numerically singular (sigma_min = " +
                                 std::to_string(F.smallest_singular_value) + ")");
    HalfStripSolution sol;
    sol.family = &family;
    sol.cell = &cell;
    sol.n_right = family.n_right;
    // weighted and unweighted systems share the solution
    sol.coeffs = F.F_unweighted.partialPivLu().solve(f_psi);
    return sol;
}

DtNMap dtn_map(const ModeFamily& family, const CellMatrices& cell, int n_tr) {
    const TraceMatrix FD = assemble_F(family, TraceOperatorSpec::dirichlet(), cell, n_tr);
    const double scale = FD.F.cwiseAbs().maxCoeff();
    if (FD.smallest_singular_value < 1e-10 * std::max(1.0, scale))
        throw std::runtime_error(
            "Dirichlet trace matrix is near-singular (possible non-uniqueness frequency; "
            "sigma_min = " +
            std::to_string(FD.smallest_singular_value) + "); use the Robin trace instead");
    const TraceMatrix FN = assemble_F(family, TraceOperatorSpec::neumann(), cell, n_tr);
    DtNMap map;
    map.n_tr = n_tr;
    map.smallest_singular_value_FD = FD.smallest_singular_value;
    map.matrix = FN.F_unweighted * FD.F_unweighted.partialPivLu().solve(
                                       MatrixXcd::Identity(n_tr, n_tr));
    return map;
}

}  // namespace floquet
