// Independent closed-form references used by the tests. Everything here is
// derived from textbook formulas (constant-coefficient dispersion, layered
// 1-D transfer matrices, analytic Fourier integrals) and stays clear of the
// library's solution path.
#pragma once

#include <complex>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;

struct Layer {
    double eps;
    double x0, x1;  // sub-interval of the unit cell
};

/// Fourier coefficient \int_0^1 eps(x) exp(2*pi*i*m*x) dx of a layered profile.
Complex layered_fourier(int m, const std::vector<Layer>& layers);

/// Characteristic values of the constant-permittivity guide in the fundamental
/// strip: +-sqrt(omega2*eps - kappa^2) per transverse eigenvalue, both signs,
/// filtered to |Im| <= im_max.
std::vector<Complex> constant_dispersion_roots(double omega2, double eps,
                                               const std::vector<double>& kappas,
                                               double im_max);

/// Floquet exponents of w'' + (omega2*eps(x) - kappa^2) w = 0 over one period
/// for a layered profile: the two multipliers lambda, 1/lambda computed from
/// the monodromy trace with overflow-safe formulas. Returns both xi values
/// with Re in [-pi, pi), decaying one first when in a gap.
std::vector<Complex> layered_hill_xi(double omega2, double kappa,
                                     const std::vector<Layer>& layers);

/// Trace of the one-period transfer matrix (the Hill discriminant).
double layered_hill_discriminant(double omega2, double kappa,
                                 const std::vector<Layer>& layers);

}  // namespace oracles
