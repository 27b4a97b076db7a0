#pragma once

#include <cstdint>
#include <vector>

#include "floquet/modes.hpp"

namespace floquet {

/// Left-boundary trace operator theta_D v(0,.) + theta_N dv/dx1(0,.). The
/// target Sobolev order is +1/2 when theta_N = 0 and -1/2 otherwise.
struct TraceOperatorSpec {
    Complex theta_D = 1.0;
    Complex theta_N = 0.0;

    double target_space_order() const { return theta_N == Complex(0.0) ? 0.5 : -0.5; }
    static TraceOperatorSpec dirichlet() { return {1.0, 0.0}; }
    static TraceOperatorSpec neumann() { return {0.0, 1.0}; }
    static TraceOperatorSpec robin(double kappa_r = 1.0) { return {kI * kappa_r, 1.0}; }
};

/// Trace of a mode in the transverse eigenbasis (length M2 coefficient vector).
VectorXcd trace_of_mode(const FloquetMode& v, const TraceOperatorSpec& spec,
                        const CellMatrices& cell);

/// Square matrix of weighted trace columns of v_1..v_{n_tr} over the first
/// n_tr transverse modes. weights(k) = (1+kappa_k^2)^{s/2} with s = +-1/2.
struct TraceMatrix {
    MatrixXcd F;             // weighted
    MatrixXcd F_unweighted;  // plain trace coefficients
    VectorXd weights;
    TraceOperatorSpec spec;
    int n_tr = 0;
    double smallest_singular_value = 0.0;
};

/// Throws if any mode's trace column vanishes (trace operator annihilates a
/// basis mode) leaving near-singularity to the caller via
/// smallest_singular_value.
TraceMatrix assemble_F(const ModeFamily& family, const TraceOperatorSpec& spec,
                       const CellMatrices& cell, int n_tr);

/// Condition numbers of the weighted trace Gram matrix F*F for a list of
/// truncation sizes. A Riesz basis manifests as a bounded plateau.
std::vector<std::pair<int, double>> riesz_conditioning(const ModeFamily& family,
                                                       const TraceOperatorSpec& spec,
                                                       const CellMatrices& cell,
                                                       const std::vector<int>& sizes);

struct MonodromyForm {
    std::vector<std::pair<Complex, int>> jordan_blocks;  // (exp(i xi_n), size)
    MatrixXcd jordan;                                    // J in the trace basis
    MatrixXcd basis_change;                              // mode -> Jordan basis
    double spectral_radius_evanescent = 0.0;             // exp(-Im xi_{n_right+1})
    double verification_error = 0.0;                     // max over random trials
};

/// One-cell translation operator conjugated to the trace space: verifies
/// F J F^{-1} (trace v) = trace(T v) on random coefficient vectors and reports
/// the worst error. Jordan eigenvalues come from the quasi-momenta, never from
/// re-factorizing F J F^{-1}.
MonodromyForm monodromy(const ModeFamily& family, const TraceOperatorSpec& spec,
                        const TraceMatrix& F, const CellMatrices& cell,
                        const std::vector<ResolvedCharval>& resolved, uint64_t seed = 1234,
                        int trials = 10);

/// Half-strip solution sum a_n v_n with its outgoing decomposition.
struct HalfStripSolution {
    VectorXcd coeffs;
    int n_right = 0;
    const ModeFamily* family = nullptr;
    const CellMatrices* cell = nullptr;

    Complex evaluate(double x1, double x2) const;
    Complex evaluate_propagating(double x1, double x2) const;
    Complex evaluate_tail(double x1, double x2) const;
    /// PDE residual |Delta v + omega2 eps v| at a point (analytic Laplacian).
    double residual_at(const PermittivityCell& eps, double x1, double x2) const;
    /// Least-squares decay rate of log ||v(x1,.)||_{L2} over integer-spaced x1.
    double fitted_decay_rate(double x1_from, double x1_to, int n_samples = 5,
                             int n_quad = 64) const;
};

/// Solves the left boundary value problem gamma v = f by coefficients
/// a = F^{-1} f. f holds plain (unweighted) transverse coefficients.
HalfStripSolution solve_bvp(const VectorXcd& f_psi, const TraceMatrix& F,
                            const ModeFamily& family, const CellMatrices& cell);

struct DtNMap {
    MatrixXcd matrix;  // Neumann = matrix * Dirichlet, plain psi coefficients
    int n_tr = 0;
    double smallest_singular_value_FD = 0.0;
};

/// Dirichlet-to-Neumann map on the first n_tr transverse modes, built from the
/// outgoing family. Throws if the Dirichlet trace matrix is near-singular
/// (possible non-uniqueness frequency; use the Robin path instead).
DtNMap dtn_map(const ModeFamily& family, const CellMatrices& cell, int n_tr);

}  // namespace floquet
