#pragma once

#include <vector>

#include "floquet/charvals.hpp"
#include "floquet/types.hpp"

namespace floquet {

enum class ModeClass {
    RightPropagating,
    LeftPropagating,
    RightEvanescent,
    LeftGrowing,
    DegeneratePropagating,
    Unclassified,
};

enum class NormTag { Raw, QNormalized, L2ScaledTail };

const char* to_string(ModeClass c);

/// A Floquet mode v(x) = exp(i*xi*x1) * sum_p x1^p u^(p)(x) with 1-periodic
/// u^(p) stored as phi-coefficient vectors. parts[order] is nonzero.
struct FloquetMode {
    Complex xi;
    int order = 0;
    std::vector<VectorXcd> parts;  // u^(0), ..., u^(order)
    ModeClass cls = ModeClass::Unclassified;
    NormTag tag = NormTag::Raw;
    int n = 0;            // 1-based enumeration index once classified, else 0
    int charval_id = -1;  // provenance
    int chain_id = -1;
    int chain_pos = -1;
    Complex scale = 1.0;  // cumulative factor applied to the raw chain mode
};

/// One mode per chain element per Jordan chain: the element at position k of
/// chain j becomes the order-k mode with parts u^(p) = i^p/p! * u_{k-p}.
std::vector<FloquetMode> modes_from_chain(const CharacteristicValue& cv,
                                          const JordanChainSet& chains);

Complex evaluate_mode(const FloquetMode& v, const CrossSectionBasis& basis,
                      const PlaneTruncation& trunc, double x1, double x2);
Complex evaluate_mode_dx1(const FloquetMode& v, const CrossSectionBasis& basis,
                          const PlaneTruncation& trunc, double x1, double x2);
/// Analytic Laplacian of the mode representation (not a finite difference).
Complex evaluate_mode_laplacian(const FloquetMode& v, const CrossSectionBasis& basis,
                                const PlaneTruncation& trunc, double x1, double x2);

/// Translation by one period on the span of a chain family at one quasi-
/// momentum: the raw upper-triangular Toeplitz representation, its Jordan
/// normal form (eigenvalue exp(i*xi0), block sizes r_j), and the basis change
/// S with raw * S = S * jordan.
struct TranslationMatrices {
    MatrixXcd raw;
    MatrixXcd jordan;
    MatrixXcd basis_change;
};

TranslationMatrices translation_matrix(const CharacteristicValue& cv);

/// Energy flux form q(v, w) evaluated from the x1 = 0 trace coefficients.
Complex flux(const FloquetMode& v, const FloquetMode& w, const CellMatrices& cell);

/// Same form evaluated by transverse quadrature at a given x1 (consistency
/// diagnostic; q is x1-independent for solutions).
Complex flux_at(const FloquetMode& v, const FloquetMode& w, const CellMatrices& cell,
                double x1, int n_quad = 128);

/// lambda'(xi) of the band through a real-xi order-0 mode (Hellmann-Feynman);
/// group velocity is lambda' / (2*omega). Throws for complex xi or order > 0.
double group_velocity(const FloquetMode& v, const CellMatrices& cell,
                      double tol_real = 1e-7);

/// The enumerated outgoing family v_1, v_2, ...: right-propagating modes
/// (q-normalized, q(v_j, v_k) = i delta_jk), then decaying modes ordered by
/// increasing Im xi with the tail normalization ||u^(m)||^2 = (1+kappa_n^2)^{-1/2}.
struct ModeFamily {
    std::vector<FloquetMode> ordered;
    std::vector<FloquetMode> left;  // left-propagating and growing counterparts
    int n_right = 0;                // count of right-propagating modes
    int n_real = 0;                 // all real-xi modes incl. degenerate ones
    int n_degenerate = 0;
};

ModeFamily classify_and_normalize(const std::vector<ResolvedCharval>& resolved,
                                  const CellMatrices& cell, const CrossSectionBasis& basis,
                                  const Tolerances& tol);

struct EstimateRow {
    int n = 0;  // enumeration index
    Complex xi;
    double lhs[7] = {0, 0, 0, 0, 0, 0, 0};
    double rhs[7] = {0, 0, 0, 0, 0, 0, 0};
    bool checked[7] = {false, false, false, false, false, false, false};
    // slots: 0..3 the component estimates (projection, x1-derivative, trace,
    // derivative trace), 4..6 their index-scaled variants
};

struct EstimateReport {
    std::vector<EstimateRow> rows;
    double trace_constant = 0.0;  // sqrt(sum 1/(pi^2 l1^2 + delta^2))
    bool ok = true;
};

/// Verifies the closure estimates for decaying modes inside the disk cover and
/// the index-scaled bounds with explicit constants. Violations beyond 1e-8
/// slack fail the report.
EstimateReport check_estimates(const ModeFamily& family, const DiskCover& cover,
                               const CellMatrices& cell, const CrossSectionBasis& basis);

}  // namespace floquet
