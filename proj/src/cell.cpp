#include "floquet/cell.hpp"

#include <cmath>

#include "floquet/quadrature.hpp"

namespace floquet {

namespace {

// x1 panel boundaries aligned with the permittivity structure
std::vector<double> x1_panels(const PermittivityCell& eps) {
    std::vector<double> cuts{0.0};
    if (eps.repr() == PermittivityCell::Repr::Grid) {
        for (int c = 1; c < eps.grid_n1(); ++c) cuts.push_back(static_cast<double>(c) / eps.grid_n1());
    }
    cuts.push_back(1.0);
    return cuts;
}

std::vector<double> x2_panels(const PermittivityCell& eps, double L) {
    std::vector<double> cuts{0.0};
    if (eps.repr() == PermittivityCell::Repr::Grid) {
        for (int r = 1; r < eps.grid_n2(); ++r) cuts.push_back(L * r / eps.grid_n2());
    }
    cuts.push_back(L);
    return cuts;
}

MatrixXcd quadrature_E(const PermittivityCell& eps, const PlaneTruncation& trunc,
                       const CrossSectionBasis& basis, double oversample) {
    const int n = trunc.dim();
    const int M1 = trunc.M1, M2 = trunc.M2;
    const double L = basis.L();

    const auto cuts1 = x1_panels(eps);
    const auto cuts2 = x2_panels(eps, L);
    const int panels1 = static_cast<int>(cuts1.size()) - 1;
    const int panels2 = static_cast<int>(cuts2.size()) - 1;

    // 4x oversampling relative to the highest resolved frequency per direction
    const int total1 = std::max(32, static_cast<int>(oversample * 4 * (2 * M1 + 1)));
    const int total2 = std::max(32, static_cast<int>(oversample * 4 * (2 * M2 + 1)));
    const int p1 = std::max(8, total1 / panels1 + 2);
    const int p2 = std::max(8, total2 / panels2 + 2);

    std::vector<double> x1n, x1w, x2n, x2w;
    for (int p = 0; p < panels1; ++p) {
        auto r = gauss_on(p1, cuts1[p], cuts1[p + 1]);
        x1n.insert(x1n.end(), r.nodes.begin(), r.nodes.end());
        x1w.insert(x1w.end(), r.weights.begin(), r.weights.end());
    }
    for (int p = 0; p < panels2; ++p) {
        auto r = gauss_on(p2, cuts2[p], cuts2[p + 1]);
        x2n.insert(x2n.end(), r.nodes.begin(), r.nodes.end());
        x2w.insert(x2w.end(), r.weights.begin(), r.weights.end());
    }

    // psi values at the x2 nodes
    MatrixXcd psi(static_cast<int>(x2n.size()), M2);
    for (int j = 0; j < psi.rows(); ++j)
        for (int l2 = 1; l2 <= M2; ++l2) psi(j, l2 - 1) = basis.psi(l2, x2n[j]);

    MatrixXcd E = MatrixXcd::Zero(n, n);
    MatrixXcd G(M2, M2);
    VectorXcd phase(4 * M1 + 1);  // indexed by l1' - l1 + 2*M1
    for (size_t i = 0; i < x1n.size(); ++i) {
        // transverse Gram at this x1 slice: G(a,b) = sum_j w eps conj(psi_a) psi_b
        G.setZero();
        for (int j = 0; j < psi.rows(); ++j) {
            const double w = x2w[j] * eps.value(x1n[i], x2n[j]);
            G.noalias() += w * psi.row(j).conjugate().transpose() * psi.row(j);
        }
        for (int d = -2 * M1; d <= 2 * M1; ++d)
            phase(d + 2 * M1) = std::exp(kI * (2.0 * kPi * d * x1n[i]));
        for (int l2 = 1; l2 <= M2; ++l2)
            for (int l2p = 1; l2p <= M2; ++l2p) {
                const Complex g = x1w[i] * G(l2 - 1, l2p - 1);
                if (g == 0.0) continue;
                for (int l1 = -M1; l1 <= M1; ++l1)
                    for (int l1p = -M1; l1p <= M1; ++l1p)
                        E(trunc.flat(l1, l2), trunc.flat(l1p, l2p)) +=
                            g * phase(l1p - l1 + 2 * M1);
            }
    }
    return E;
}

}  // namespace

CellMatrices assemble_epsilon(const PermittivityCell& eps, const PlaneTruncation& trunc,
                              std::shared_ptr<const CrossSectionBasis> basis, double omega2) {
    if (trunc.dim() < 4) throw std::invalid_argument("plane truncation dimension must be >= 4");
    if (basis->size() < trunc.M2)
        throw std::invalid_argument("cross-section basis shorter than M2");
    if (omega2 <= 0.0) throw std::invalid_argument("omega2 must be positive");

    CellMatrices cell;
    cell.trunc = trunc;
    cell.omega2 = omega2;
    cell.eps_min = eps.eps_min();
    cell.eps_max = eps.eps_max();
    cell.basis = basis;

    const int n = trunc.dim();
    if (eps.repr() == PermittivityCell::Repr::Constant) {
        cell.E = eps.constant_value() * MatrixXcd::Identity(n, n);
    } else {
        cell.E = quadrature_E(eps, trunc, *basis, 1.0);
        // refinement diagnostic: redo at 1.5x density, compare
        MatrixXcd E2 = quadrature_E(eps, trunc, *basis, 1.5);
        cell.refinement_defect =
            (cell.E - E2).cwiseAbs().maxCoeff() / (1.0 + cell.E.cwiseAbs().maxCoeff());
        if (cell.refinement_defect > 1e-8)
            throw std::runtime_error("quadrature does not resolve the permittivity (refinement defect " +
                                     std::to_string(cell.refinement_defect) + ")");
        cell.hermiticity_defect =
            (cell.E - cell.E.adjoint()).cwiseAbs().maxCoeff() / (1.0 + cell.E.cwiseAbs().maxCoeff());
        if (cell.hermiticity_defect > 1e-8)
            throw std::runtime_error("permittivity matrix is not Hermitian (defect " +
                                     std::to_string(cell.hermiticity_defect) + ")");
        cell.E = 0.5 * (cell.E + cell.E.adjoint()).eval();
    }

    cell.sigma.resize(n);
    cell.C_diag.resize(n);
    cell.K_diag.resize(n);
    for (int f = 0; f < n; ++f) {
        const int l1 = trunc.l1_of(f), l2 = trunc.l2_of(f);
        const Complex s(2.0 * kPi * l1, basis->kappa(l2));
        cell.sigma[f] = s;
        cell.C_diag(f) = 4.0 * kPi * l1;
        cell.K_diag(f) = std::norm(s);
    }
    return cell;
}

MatrixXcd assemble_B(const CellMatrices& cell, Complex xi) {
    return assemble_B(cell, xi, cell.omega2);
}

MatrixXcd assemble_B(const CellMatrices& cell, Complex xi, double mu) {
    MatrixXcd B = mu * cell.E;
    for (int f = 0; f < cell.dim(); ++f) {
        const Complex s = cell.sigma[f];
        B(f, f) -= (xi + s) * (xi + std::conj(s));
    }
    return B;
}

VectorXcd B_prime_diag(const CellMatrices& cell, Complex xi) {
    VectorXcd d(cell.dim());
    for (int f = 0; f < cell.dim(); ++f) d(f) = -(cell.C_diag(f) + 2.0 * xi);
    return d;
}

}  // namespace floquet
