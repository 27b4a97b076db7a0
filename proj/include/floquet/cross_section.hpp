#pragma once

#include <vector>

#include "floquet/types.hpp"

namespace floquet {

enum class BoundaryKind { Dirichlet, Neumann, Mixed, QuasiPeriodic };

struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double beta = 0.0;  // quasi-periodic phase, only meaningful for QuasiPeriodic

    bool is_quasiperiodic() const { return kind == BoundaryKind::QuasiPeriodic; }
    /// beta in {0, pi} forces a mirror-symmetry requirement on the permittivity.
    bool beta_requires_symmetry(double tol = 1e-12) const;
};

const char* to_string(BoundaryKind k);

/// Eigenbasis of the transverse operator -d^2/dt^2 on (0, L) for one of the
/// four closed-form boundary condition families. kappa values are sorted
/// ascending; raw_index maps the sorted position back to the family's native
/// index set (k >= 1, k >= 0, or k in Z).
class CrossSectionBasis {
  public:
    CrossSectionBasis() = default;

    double L() const { return L_; }
    const BoundaryCondition& bc() const { return bc_; }
    int size() const { return static_cast<int>(kappas_.size()); }

    /// n is 1-based: kappa(1) <= kappa(2) <= ...
    double kappa(int n) const;
    int raw_index(int n) const;

    /// Transverse eigenfunction psi_n evaluated at x2 in [0, L].
    Complex psi(int n, double x2) const;
    /// Analytic second derivative of psi_n (equals -kappa_n^2 psi_n).
    Complex psi_dd(int n, double x2) const;

    /// Diagonal Sobolev weight (1 + kappa_n^2)^s of the transverse H^s norm.
    double sobolev_weight(int n, double s) const;

    /// Half the minimal gap between distinct neighboring kappa values.
    double delta_gamma() const { return delta_gamma_; }

  private:
    friend CrossSectionBasis build_basis(const BoundaryCondition&, double, int);

    double L_ = 1.0;
    BoundaryCondition bc_;
    std::vector<double> kappas_;
    std::vector<int> raw_;
    double delta_gamma_ = 0.0;

    void check_index(int n) const;
};

/// Builds the first `count` sorted transverse eigenpairs. Ties between equal
/// kappa values (quasi-periodic +-k pairs) are broken by lower raw index.
/// Throws std::invalid_argument for L <= 0, count < 2, or beta outside [0, 2*pi).
CrossSectionBasis build_basis(const BoundaryCondition& bc, double L, int count);

}  // namespace floquet
