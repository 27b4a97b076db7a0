#pragma once

#include <optional>
#include <vector>

#include "floquet/cell.hpp"
#include "floquet/types.hpp"

namespace floquet {

/// One eigenpair of the companion-linearized pencil. xi carries the
/// fundamental-domain representative, xi_raw the value as solved, and shift
/// the integer k with xi = xi_raw - 2*pi*k.
struct RawCharval {
    Complex xi;
    Complex xi_raw;
    int shift = 0;
    VectorXcd kernel_vec;  // first block of the linearized eigenvector, unit norm
};

/// Solves the quadratic pencil xi^2 I + xi C + (K - omega2 E) via the 2*dim
/// companion linearization with a dense complex eigensolver. Returns all
/// eigenpairs with |Im xi| <= im_max, Re normalized into [-pi, pi).
std::vector<RawCharval> solve_all_charvals(const CellMatrices& cell, double im_max);

/// A merged group of raw eigenvalues representing one characteristic value.
/// Translate copies (including Brillouin-edge twins) are folded in; count is
/// the algebraic multiplicity seen by the best-converged translate group.
/// xi0 averages the solved copies on the cylinder (zone-edge twins land at
/// Re = +-pi exactly); xi_work is the representative group's own mean, the
/// point where the truncated pencil is actually singular.
struct Cluster {
    Complex xi0;
    Complex xi_work;
    int count = 0;
    std::vector<RawCharval> members;        // all merged raws
    std::vector<int> representative_members;  // indices into members of the chosen group
};

std::vector<Cluster> cluster_charvals(const std::vector<RawCharval>& raws,
                                      const Tolerances& tol);

struct CharacteristicValue {
    Complex xi;       // canonical representative, Re in [-pi, pi)
    Complex xi_work;  // solved position (may sit just outside the strip)
    int cluster_size = 0;
    std::vector<int> partial_null_multiplicities;  // r_1 >= r_2 >= ...
    int kernel_dim = 0;
    double residual = 0.0;  // ||B(xi_work) u|| / ||u|| for the best kernel vector
};

struct JordanChainSet {
    // chains[j] = (u_0, ..., u_{r_j - 1}) in the phi-coefficient basis
    std::vector<std::vector<VectorXcd>> chains;
};

struct ResolvedCharval {
    CharacteristicValue cv;
    JordanChainSet chains;
};

/// Resolves a cluster into kernel dimension, partial null multiplicities, and
/// canonical Jordan chains (SVD-ordered representatives). Throws if the chain
/// structure cannot account for the cluster multiplicity.
ResolvedCharval resolve_multiplicity(const Cluster& cluster, const CellMatrices& cell,
                                     const Tolerances& tol);

/// Piecewise-smooth closed integration contour.
struct Contour {
    enum class Kind { Circle, Rectangle, TwoDisks };
    Kind kind = Kind::Circle;
    Complex center;       // Circle / first disk
    double radius = 0.0;  // Circle / first disk
    Complex center2;      // TwoDisks
    double radius2 = 0.0;
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;  // Rectangle

    static Contour circle(Complex c, double r);
    static Contour rectangle(double re_min, double re_max, double im_min, double im_max);
    static Contour two_disks(Complex c1, double r1, Complex c2, double r2);
};

/// Evaluates (1/2*pi*i) * contour integral of tr(B'(xi) B(xi)^{-1}) and rounds
/// to the nearest integer. Circles use the trapezoid rule, rectangle edges and
/// disk-union arcs composite 16-point Gauss segments; n_quad is the total
/// point budget. Throws if the contour passes too close to a characteristic
/// value or the rounding defect exceeds 0.1.
int count_by_contour(const CellMatrices& cell, const Contour& contour, int n_quad,
                     double* rounding_defect = nullptr);

/// Homotopy variant: counts characteristic values of B(xi, mu) = Delta_xi + mu*eps.
int count_by_contour_mu(const CellMatrices& cell, double mu, const Contour& contour,
                        int n_quad, double* rounding_defect = nullptr);

struct Disk {
    int l2 = 0;        // cross-section index of the center
    double kappa = 0;  // center = i*kappa
    double radius = 0;
};

struct DiskComponent {
    std::vector<Disk> disks;
    std::vector<std::pair<int, int>> indices;  // (l1, l2) with sigma_l inside
    double kappa_inf = 0.0;                    // inf of Im over the component
    int expected_count = 0;                    // #indices
};

struct DiskCover {
    int N = 0;             // cutoff index: kappa_N > omega2 * eps_max * max(1,L) / pi
    double cutoff = 0.0;   // the bound itself
    double kappa_N = 0.0;
    bool pairwise_overlaps_only = true;  // false when disks chain into longer runs
    std::vector<DiskComponent> components;  // ordered by increasing kappa
    double top() const;                     // highest covered Im
};

/// Builds `depth` disks |z - i*kappa_{l2}| < omega2*eps_max/kappa_{l2} for
/// l2 = N, ..., N+depth-1 and merges overlapping neighbors into components.
/// Requires the basis to hold at least N+depth+1 modes. Longer overlap chains
/// are merged too and flagged via pairwise_overlaps_only.
DiskCover build_disk_cover(const CellMatrices& cell, const CrossSectionBasis& basis, int depth);

struct LocalizationRow {
    Complex xi;
    bool required = false;   // Im xi >= kappa_N, containment mandatory
    bool contained = false;
    double margin = 0.0;     // max over disks of (radius - |xi - center|)
};

struct ComponentCountRow {
    double kappa_min = 0.0;
    int expected = 0;
    int counted = 0;
    double defect = 0.0;
    bool checked = false;  // false when the component exceeds the solved strip
};

struct LocalizationReport {
    std::vector<LocalizationRow> rows;
    std::vector<ComponentCountRow> counts;
    bool ok = true;
};

/// Checks that every characteristic value with Im xi >= kappa_N lies in the
/// cover and that per-component contour counts match the expected number of
/// symbols sigma_l inside.
LocalizationReport verify_disk_localization(const std::vector<Cluster>& clusters,
                                            const DiskCover& cover, const CellMatrices& cell,
                                            double im_max, int n_quad = 128);

}  // namespace floquet
