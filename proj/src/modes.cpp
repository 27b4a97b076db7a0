#include "floquet/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "floquet/quadrature.hpp"

namespace floquet {

const char* to_string(ModeClass c) {
    switch (c) {
        case ModeClass::RightPropagating: return "right_propagating";
        case ModeClass::LeftPropagating: return "left_propagating";
        case ModeClass::RightEvanescent: return "right_evanescent";
        case ModeClass::LeftGrowing: return "left_growing";
        case ModeClass::DegeneratePropagating: return "degenerate_propagating";
        case ModeClass::Unclassified: return "unclassified";
    }
    return "?";
}

std::vector<FloquetMode> modes_from_chain(const CharacteristicValue& cv,
                                          const JordanChainSet& chains) {
    std::vector<FloquetMode> out;
    double factorial[32];
    factorial[0] = 1.0;
    for (int i = 1; i < 32; ++i) factorial[i] = factorial[i - 1] * i;

    for (size_t j = 0; j < chains.chains.size(); ++j) {
        const auto& chain = chains.chains[j];
        for (size_t k = 0; k < chain.size(); ++k) {
            FloquetMode m;
            m.xi = cv.xi_work;  // the solved position; translate-equivalent to cv.xi
            m.order = static_cast<int>(k);
            m.chain_id = static_cast<int>(j);
            m.chain_pos = static_cast<int>(k);
            // v = e^{i xi x1} sum_{l<=k} (i x1)^{k-l}/(k-l)! u_l
            //   = e^{i xi x1} sum_p x1^p (i^p/p!) u_{k-p}
            for (size_t p = 0; p <= k; ++p)
                m.parts.push_back(std::pow(kI, p) / factorial[p] * chain[k - p]);
            out.push_back(std::move(m));
        }
    }
    return out;
}

Complex evaluate_mode(const FloquetMode& v, const CrossSectionBasis& basis,
                      const PlaneTruncation& trunc, double x1, double x2) {
    Complex val = 0.0;
    double x1p = 1.0;
    for (int p = 0; p <= v.order; ++p) {
        Complex inner = 0.0;
        for (int f = 0; f < trunc.dim(); ++f) {
            const Complex c = v.parts[p](f);
            if (c == 0.0) continue;
            inner += c * std::exp(kI * (2.0 * kPi * trunc.l1_of(f) * x1)) *
                     basis.psi(trunc.l2_of(f), x2);
        }
        val += x1p * inner;
        x1p *= x1;
    }
    return std::exp(kI * v.xi * x1) * val;
}

Complex evaluate_mode_dx1(const FloquetMode& v, const CrossSectionBasis& basis,
                          const PlaneTruncation& trunc, double x1, double x2) {
    // d/dx1 of e^{mu x1} x1^p with mu = i(xi + 2 pi l1)
    Complex val = 0.0;
    for (int p = 0; p <= v.order; ++p) {
        for (int f = 0; f < trunc.dim(); ++f) {
            const Complex c = v.parts[p](f);
            if (c == 0.0) continue;
            const Complex mu = kI * (v.xi + 2.0 * kPi * trunc.l1_of(f));
            const double xp = std::pow(x1, p);
            const double xpm = p > 0 ? std::pow(x1, p - 1) : 0.0;
            val += c * (mu * xp + static_cast<double>(p) * xpm) * std::exp(mu * x1) *
                   basis.psi(trunc.l2_of(f), x2);
        }
    }
    return val;
}

Complex evaluate_mode_laplacian(const FloquetMode& v, const CrossSectionBasis& basis,
                                const PlaneTruncation& trunc, double x1, double x2) {
    Complex val = 0.0;
    for (int p = 0; p <= v.order; ++p) {
        for (int f = 0; f < trunc.dim(); ++f) {
            const Complex c = v.parts[p](f);
            if (c == 0.0) continue;
            const int l2 = trunc.l2_of(f);
            const Complex mu = kI * (v.xi + 2.0 * kPi * trunc.l1_of(f));
            const double kap = basis.kappa(l2);
            const double xp = std::pow(x1, p);
            const double xpm = p > 0 ? p * std::pow(x1, p - 1) : 0.0;
            const double xpmm = p > 1 ? p * (p - 1) * std::pow(x1, p - 2) : 0.0;
            val += c * (xpmm + 2.0 * mu * xpm + (mu * mu - kap * kap) * xp) *
                   std::exp(mu * x1) * basis.psi(l2, x2);
        }
    }
    return val;
}

TranslationMatrices translation_matrix(const CharacteristicValue& cv) {
    const auto& ranks = cv.partial_null_multiplicities;
    const int total = std::accumulate(ranks.begin(), ranks.end(), 0);
    const Complex lambda = std::exp(kI * cv.xi_work);

    TranslationMatrices t;
    t.raw = MatrixXcd::Zero(total, total);
    t.jordan = MatrixXcd::Zero(total, total);
    t.basis_change = MatrixXcd::Zero(total, total);

    double factorial[32];
    factorial[0] = 1.0;
    for (int i = 1; i < 32; ++i) factorial[i] = factorial[i - 1] * i;

    int off = 0;
    for (int r : ranks) {
        for (int m = 0; m < r; ++m)
            for (int k = m; k < r; ++k)
                t.raw(off + m, off + k) = lambda * std::pow(kI, k - m) / factorial[k - m];
        for (int m = 0; m < r; ++m) {
            t.jordan(off + m, off + m) = lambda;
            if (m + 1 < r) t.jordan(off + m, off + m + 1) = 1.0;
        }
        // solve raw * S = S * J column by column: s_1 = e_1, (raw - lambda) s_{k+1} = s_k.
        // Row j of (raw - lambda I) s = rhs reads sum_{k>j} T_{k-j} s_k = rhs_j
        // with T_d = lambda i^d / d!, so s resolves top-down from s_{j+1}.
        MatrixXcd S = MatrixXcd::Zero(r, r);
        S(0, 0) = 1.0;
        for (int col = 1; col < r; ++col) {
            const VectorXcd rhs = S.col(col - 1);
            VectorXcd s = VectorXcd::Zero(r);
            for (int j = col - 1; j >= 0; --j) {
                Complex acc = rhs(j);
                for (int k = j + 2; k <= col; ++k)
                    acc -= lambda * std::pow(kI, k - j) / factorial[k - j] * s(k);
                s(j + 1) = acc / (lambda * kI);
            }
            S.col(col) = s;
        }
        t.basis_change.block(off, off, r, r) = S;
        off += r;
    }
    return t;
}

namespace {

// Dirichlet and Neumann trace coefficients of the mode at x1 = 0, in the psi
// basis: a_{l2} = sum_{l1} u0, b_{l2} = sum_{l1} (i xi + 2 pi i l1) u0 + u1.
std::pair<VectorXcd, VectorXcd> trace_parts(const FloquetMode& v, const PlaneTruncation& trunc) {
    VectorXcd a = VectorXcd::Zero(trunc.M2);
    VectorXcd b = VectorXcd::Zero(trunc.M2);
    for (int f = 0; f < trunc.dim(); ++f) {
        const int l2 = trunc.l2_of(f) - 1;
        const Complex mu = kI * (v.xi + 2.0 * kPi * trunc.l1_of(f));
        a(l2) += v.parts[0](f);
        b(l2) += mu * v.parts[0](f);
        if (v.order >= 1) b(l2) += v.parts[1](f);
    }
    return {a, b};
}

}  // namespace

Complex flux(const FloquetMode& v, const FloquetMode& w, const CellMatrices& cell) {
    const auto [av, bv] = trace_parts(v, cell.trunc);
    const auto [aw, bw] = trace_parts(w, cell.trunc);
    Complex q = 0.0;
    for (int k = 0; k < av.size(); ++k)
        q += bv(k) * std::conj(aw(k)) - av(k) * std::conj(bw(k));
    return q;
}

Complex flux_at(const FloquetMode& v, const FloquetMode& w, const CellMatrices& cell,
                double x1, int n_quad) {
    const auto& basis = *cell.basis;
    auto rule = gauss_on(n_quad, 0.0, basis.L());
    Complex q = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        const double x2 = rule.nodes[i];
        const Complex vv = evaluate_mode(v, basis, cell.trunc, x1, x2);
        const Complex dv = evaluate_mode_dx1(v, basis, cell.trunc, x1, x2);
        const Complex ww = evaluate_mode(w, basis, cell.trunc, x1, x2);
        const Complex dw = evaluate_mode_dx1(w, basis, cell.trunc, x1, x2);
        q += rule.weights[i] * (dv * std::conj(ww) - vv * std::conj(dw));
    }
    return q;
}

double group_velocity(const FloquetMode& v, const CellMatrices& cell, double tol_real) {
    if (std::abs(v.xi.imag()) > tol_real)
        throw std::invalid_argument("group velocity is defined for real quasi-momenta only");
    if (v.order != 0)
        throw std::invalid_argument("group velocity is defined for order-0 modes only");
    const VectorXcd& u = v.parts[0];
    double num = 0.0;
    for (int f = 0; f < cell.dim(); ++f)
        num += 2.0 * (v.xi.real() + 2.0 * kPi * cell.trunc.l1_of(f)) * std::norm(u(f));
    const double den = (u.adjoint() * (cell.E * u)).value().real();
    return num / den;
}

namespace {

void scale_mode(FloquetMode& m, Complex s) {
    for (auto& p : m.parts) p *= s;
    m.scale *= s;
}

// q-orthogonalize `m` against `prev` in the indefinite flux form.
void q_orthogonalize(FloquetMode& m, const std::vector<FloquetMode>& prev,
                     const CellMatrices& cell) {
    for (const auto& w : prev) {
        const Complex qww = flux(w, w, cell);
        const Complex qmw = flux(m, w, cell);
        if (std::abs(qww) < 1e-14) continue;
        const Complex c = qmw / qww;
        for (size_t p = 0; p < m.parts.size(); ++p)
            if (p < w.parts.size()) m.parts[p] -= c * w.parts[p];
    }
}

}  // namespace

ModeFamily classify_and_normalize(const std::vector<ResolvedCharval>& resolved,
                                  const CellMatrices& cell, const CrossSectionBasis& basis,
                                  const Tolerances& tol) {
    ModeFamily fam;
    std::vector<FloquetMode> real_modes, up, down;
    for (size_t id = 0; id < resolved.size(); ++id) {
        auto modes = modes_from_chain(resolved[id].cv, resolved[id].chains);
        for (auto& m : modes) {
            m.charval_id = static_cast<int>(id);
            if (std::abs(m.xi.imag()) <= tol.real_xi)
                real_modes.push_back(std::move(m));
            else if (m.xi.imag() > 0)
                up.push_back(std::move(m));
            else
                down.push_back(std::move(m));
        }
    }
    fam.n_real = static_cast<int>(real_modes.size());

    // -- real quasi-momenta: split by flux sign, q-orthonormalize
    std::vector<FloquetMode> nondeg, degenerate;
    for (auto& m : real_modes) {
        const double imq = flux(m, m, cell).imag();
        if (std::abs(imq) > tol.flux && m.order == 0)
            nondeg.push_back(std::move(m));
        else
            degenerate.push_back(std::move(m));
    }
    std::sort(nondeg.begin(), nondeg.end(), [&](const FloquetMode& a, const FloquetMode& b) {
        const double qa = std::abs(flux(a, a, cell).imag());
        const double qb = std::abs(flux(b, b, cell).imag());
        if (qa != qb) return qa > qb;
        return a.xi.real() < b.xi.real();
    });
    std::vector<FloquetMode> processed;
    std::vector<FloquetMode> rights, lefts;
    for (auto& m : nondeg) {
        q_orthogonalize(m, processed, cell);
        const double t = flux(m, m, cell).imag();
        scale_mode(m, 1.0 / std::sqrt(std::abs(t)));
        m.tag = NormTag::QNormalized;
        m.cls = t > 0 ? ModeClass::RightPropagating : ModeClass::LeftPropagating;
        processed.push_back(m);
        (t > 0 ? rights : lefts).push_back(std::move(m));
    }

    // -- degenerate real modes: pairwise canonical normalization inside each
    // length-2 chain; higher defects are kept raw and flagged
    std::vector<FloquetMode> deg_plus, deg_minus;
    for (auto& m : degenerate) m.cls = ModeClass::DegeneratePropagating;
    for (size_t i = 0; i < degenerate.size(); ++i) {
        auto& v0 = degenerate[i];
        if (v0.order != 0) continue;
        bool paired = false;
        for (size_t j = 0; j < degenerate.size() && !paired; ++j) {
            auto& v1 = degenerate[j];
            if (v1.charval_id != v0.charval_id || v1.chain_id != v0.chain_id || v1.order != 1)
                continue;
            Complex A = flux(v1, v0, cell);  // purely imaginary for real xi
            if (std::abs(A) < 1e-14) continue;
            const Complex sc = 1.0 / std::sqrt(std::abs(A));
            scale_mode(v0, sc);
            scale_mode(v1, sc);
            A = flux(v1, v0, cell);
            const double sgn = A.imag() > 0 ? 1.0 : -1.0;
            const double c2 = flux(v1, v1, cell).imag();
            // e(t) = v1 + sgn*(t - c2)/2 * v0 satisfies q(e,e) = i*t and the
            // two choices t = +-1 are q-orthogonal
            FloquetMode ep = v1, em = v1;
            const double ap = sgn * (1.0 - c2) / 2.0;
            const double am = sgn * (-1.0 - c2) / 2.0;
            for (size_t p = 0; p < v0.parts.size(); ++p) {
                ep.parts[p] += ap * v0.parts[p];
                em.parts[p] += am * v0.parts[p];
            }
            ep.tag = em.tag = NormTag::QNormalized;
            deg_plus.push_back(std::move(ep));
            deg_minus.push_back(std::move(em));
            paired = true;
        }
        if (!paired) deg_plus.push_back(v0);  // unpaired degenerate mode, kept raw
    }
    for (auto& m : degenerate)
        if (m.order > 1) deg_plus.push_back(m);
    fam.n_degenerate = static_cast<int>(deg_plus.size() + deg_minus.size());

    // -- assemble ordered outgoing family
    std::sort(rights.begin(), rights.end(),
              [](const FloquetMode& a, const FloquetMode& b) { return a.xi.real() < b.xi.real(); });
    fam.n_right = static_cast<int>(rights.size());
    for (auto& m : rights) fam.ordered.push_back(std::move(m));
    for (auto& m : deg_plus) fam.ordered.push_back(std::move(m));

    std::sort(up.begin(), up.end(), [](const FloquetMode& a, const FloquetMode& b) {
        if (a.xi.imag() != b.xi.imag()) return a.xi.imag() < b.xi.imag();
        if (a.xi.real() != b.xi.real()) return a.xi.real() < b.xi.real();
        return a.chain_pos < b.chain_pos;
    });
    for (auto& m : up) fam.ordered.push_back(std::move(m));

    // enumeration indices and the decaying-tail normalization
    for (size_t i = 0; i < fam.ordered.size(); ++i) {
        auto& m = fam.ordered[i];
        m.n = static_cast<int>(i) + 1;
        if (m.cls == ModeClass::Unclassified) m.cls = ModeClass::RightEvanescent;
        if (m.cls == ModeClass::RightEvanescent) {
            if (m.n > basis.size())
                throw std::runtime_error("cross-section basis too short to normalize mode " +
                                         std::to_string(m.n));
            const double kap = basis.kappa(m.n);
            const double target = std::pow(1.0 + kap * kap, -0.25);
            const double cur = m.parts[m.order].norm();
            scale_mode(m, target / cur);
            m.tag = NormTag::L2ScaledTail;
        }
    }

    std::sort(down.begin(), down.end(), [](const FloquetMode& a, const FloquetMode& b) {
        if (a.xi.imag() != b.xi.imag()) return a.xi.imag() > b.xi.imag();
        return a.xi.real() < b.xi.real();
    });
    for (auto& m : down) {
        m.cls = ModeClass::LeftGrowing;
        fam.left.push_back(std::move(m));
    }
    for (auto& m : lefts) fam.left.push_back(std::move(m));
    for (auto& m : deg_minus) fam.left.push_back(std::move(m));
    return fam;
}

EstimateReport check_estimates(const ModeFamily& family, const DiskCover& cover,
                               const CellMatrices& cell, const CrossSectionBasis& basis) {
    EstimateReport report;
    const double delta = basis.delta_gamma();
    const double w2e = cell.omega2 * cell.eps_max;

    // explicit trace constant: sum over |l1| <= 1e4 plus an integral tail bound
    double csum = 1.0 / (delta * delta);
    for (int l1 = 1; l1 <= 10000; ++l1) csum += 2.0 / (kPi * kPi * l1 * l1 + delta * delta);
    csum += 2.0 / (kPi * kPi * 1e4);
    report.trace_constant = std::sqrt(csum);

    const double kappa_N = cover.kappa_N;
    const double rho = w2e / (kappa_N * kappa_N);

    for (const auto& m : family.ordered) {
        if (m.cls != ModeClass::RightEvanescent || m.order != 0) continue;
        const DiskComponent* comp = nullptr;
        for (const auto& c : cover.components)
            for (const auto& d : c.disks)
                if (std::abs(m.xi - Complex(0.0, d.kappa)) < d.radius) comp = &c;
        if (!comp) continue;

        EstimateRow row;
        row.n = m.n;
        row.xi = m.xi;
        const VectorXcd& u = m.parts[0];
        const double unorm = u.norm();

        // coefficient projection onto the component's index set
        VectorXcd perp = u;
        for (const auto& [l1, l2] : comp->indices)
            if (l2 <= cell.trunc.M2) perp(cell.trunc.flat(l1, l2)) = 0.0;

        VectorXcd du(cell.dim());
        for (int f = 0; f < cell.dim(); ++f)
            du(f) = 2.0 * kPi * cell.trunc.l1_of(f) * u(f);

        // transverse traces of the projected remainder and of the derivative
        VectorXcd trace_perp = VectorXcd::Zero(cell.trunc.M2);
        VectorXcd trace_d = VectorXcd::Zero(cell.trunc.M2);
        for (int f = 0; f < cell.dim(); ++f) {
            trace_perp(cell.trunc.l2_of(f) - 1) += perp(f);
            trace_d(cell.trunc.l2_of(f) - 1) += kI * du(f);
        }

        const double mindp = std::min(delta, kPi);
        row.lhs[0] = perp.norm();
        row.rhs[0] = w2e / (mindp * comp->kappa_inf) * unorm;
        row.lhs[1] = du.norm();
        row.rhs[1] = 2.0 * w2e / comp->kappa_inf * unorm;
        row.lhs[2] = trace_perp.norm();
        row.rhs[2] = report.trace_constant * w2e / comp->kappa_inf * unorm;
        row.lhs[3] = trace_d.norm();
        row.rhs[3] = 2.0 * w2e / std::sqrt(3.0) * unorm;
        row.checked[0] = row.checked[1] = row.checked[2] = row.checked[3] = true;

        // index-scaled bounds with explicit constants; valid when the
        // enumeration index matches the component of kappa_n
        if (m.n <= basis.size() && m.tag == NormTag::L2ScaledTail) {
            const double kap_n = basis.kappa(m.n);
            bool aligned = false;
            for (const auto& d : comp->disks)
                if (d.l2 == m.n || std::abs(d.kappa - kap_n) < 1e-12) aligned = true;
            if (aligned) {
                const double kn32 = std::pow(kap_n, 1.5);
                row.lhs[4] = kn32 * perp.norm();
                row.rhs[4] = w2e / (std::min(delta, kPi) * (1.0 - rho));
                row.lhs[5] = kn32 * trace_perp.norm();
                row.rhs[5] = report.trace_constant * w2e / (1.0 - rho);
                row.lhs[6] = std::sqrt(kap_n) * trace_d.norm();
                row.rhs[6] = 2.0 * w2e / std::sqrt(3.0);
                row.checked[4] = row.checked[5] = row.checked[6] = true;
            }
        }

        for (int s = 0; s < 7; ++s)
            if (row.checked[s] && row.lhs[s] > row.rhs[s] + 1e-8 * std::max(1.0, row.rhs[s]))
                report.ok = false;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace floquet
