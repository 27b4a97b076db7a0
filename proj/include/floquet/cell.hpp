#pragma once

#include <memory>
#include <vector>

#include "floquet/cross_section.hpp"
#include "floquet/permittivity.hpp"
#include "floquet/types.hpp"

namespace floquet {

/// Tensor truncation of the cell basis phi_l(x) = exp(2*pi*i*l1*x1) psi_{l2}(x2):
/// |l1| <= M1, 1 <= l2 <= M2. Flat enumeration is l2 outer, l1 inner, ascending.
struct PlaneTruncation {
    int M1 = 0;
    int M2 = 0;

    int dim() const { return (2 * M1 + 1) * M2; }
    int flat(int l1, int l2) const { return (l2 - 1) * (2 * M1 + 1) + (l1 + M1); }
    int l1_of(int flat) const { return flat % (2 * M1 + 1) - M1; }
    int l2_of(int flat) const { return flat / (2 * M1 + 1) + 1; }
};

/// Galerkin data of the cell operator at fixed frequency: the Hermitian
/// permittivity matrix E, the symbols sigma_l = 2*pi*l1 + i*kappa_{l2}, and the
/// diagonal pencil coefficients.
struct CellMatrices {
    PlaneTruncation trunc;
    MatrixXcd E;                  // <eps phi_l', phi_l>, Hermitian
    std::vector<Complex> sigma;   // per flat index
    VectorXd C_diag;              // 4*pi*l1
    VectorXd K_diag;              // |sigma_l|^2
    double omega2 = 1.0;
    double eps_min = 1.0, eps_max = 1.0;
    double hermiticity_defect = 0.0;   // before symmetrization
    double refinement_defect = 0.0;    // quadrature refinement diagnostic
    std::shared_ptr<const CrossSectionBasis> basis;

    int dim() const { return trunc.dim(); }
};

/// Projects the permittivity onto the truncated basis by tensor Gauss
/// quadrature (grid representations use per-cell composite panels). Throws if
/// the quadrature cannot resolve the permittivity or if the Hermiticity defect
/// before symmetrization exceeds 1e-8.
CellMatrices assemble_epsilon(const PermittivityCell& eps, const PlaneTruncation& trunc,
                              std::shared_ptr<const CrossSectionBasis> basis, double omega2);

/// B(xi) = -diag((xi+sigma_l)(xi+conj(sigma_l))) + omega2 * E.
MatrixXcd assemble_B(const CellMatrices& cell, Complex xi);

/// Homotopy variant with the coupling constant mu replacing omega2.
MatrixXcd assemble_B(const CellMatrices& cell, Complex xi, double mu);

/// Diagonal of B'(xi) = -diag(4*pi*l1 + 2*xi); B''(xi) = -2*I, B''' = 0.
VectorXcd B_prime_diag(const CellMatrices& cell, Complex xi);

}  // namespace floquet
