#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace floquet {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances used across the solver. All config-overridable and
/// echoed into output metadata.
struct Tolerances {
    double cluster = 1e-6;     // relative cluster merge radius for quasi-momenta
    double rank = 1e-8;        // relative SVD rank cutoff
    double chain = 1e-7;       // Jordan chain residual bound
    double real_xi = 1e-7;     // |Im xi| below this counts as a real quasi-momentum
    double flux = 1e-8;        // |Im q| below this flags a degenerate propagating mode
    double kernel = 1e-6;      // acceptable kernel residual ||B(xi)u||/||u||
    double edge_merge = 5e-3;  // coarser merge radius for Brillouin-edge twins
};

/// Wraps Re(xi) into the fundamental interval [-pi, pi). Returns the shifted
/// value and the integer shift k with xi_out = xi - 2*pi*k.
inline Complex normalize_quasimomentum(Complex xi, int* shift = nullptr) {
    const int k = static_cast<int>(std::floor((xi.real() + kPi) / (2.0 * kPi)));
    if (shift) *shift = k;
    return {xi.real() - 2.0 * kPi * k, xi.imag()};
}

/// Distance between quasi-momenta on the cylinder C / 2*pi*Z.
inline double cylinder_distance(Complex a, Complex b) {
    const double dre = std::remainder(a.real() - b.real(), 2.0 * kPi);
    return std::hypot(dre, a.imag() - b.imag());
}

}  // namespace floquet
