#include "floquet/permittivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floquet {

namespace {
double wrap_unit(double x) {
    double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}
}  // namespace

PermittivityCell PermittivityCell::constant(double value) {
    if (value <= 0.0) throw std::invalid_argument("permittivity must be positive");
    PermittivityCell p;
    p.repr_ = Repr::Constant;
    p.constant_ = value;
    p.eps_min_ = p.eps_max_ = value;
    return p;
}

PermittivityCell PermittivityCell::grid(int n1, int n2, std::vector<double> values, double L) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("permittivity grid must be at least 1x1");
    if (static_cast<int>(values.size()) != n1 * n2)
        throw std::invalid_argument("permittivity grid size mismatch: expected " +
                                    std::to_string(n1 * n2) + " values, got " +
                                    std::to_string(values.size()));
    PermittivityCell p;
    p.repr_ = Repr::Grid;
    p.n1_ = n1;
    p.n2_ = n2;
    p.grid_ = std::move(values);
    p.L_ = L;
    p.finalize_bounds();
    return p;
}

PermittivityCell PermittivityCell::separable_fourier(std::vector<FourierTerm> terms, double L) {
    if (terms.empty()) throw std::invalid_argument("empty Fourier permittivity");
    PermittivityCell p;
    p.repr_ = Repr::SeparableFourier;
    p.terms_ = std::move(terms);
    p.L_ = L;
    p.finalize_bounds();
    return p;
}

double PermittivityCell::value(double x1, double x2) const {
    switch (repr_) {
        case Repr::Constant: return constant_;
        case Repr::Grid: {
            const double f1 = wrap_unit(x1);
            int c = std::min(n1_ - 1, static_cast<int>(f1 * n1_));
            int r = std::min(n2_ - 1, std::max(0, static_cast<int>(x2 / L_ * n2_)));
            return grid_[static_cast<size_t>(r) * n1_ + c];
        }
        case Repr::SeparableFourier: {
            Complex s = 0.0;
            for (const auto& t : terms_)
                s += t.c * std::exp(kI * (2.0 * kPi * t.m * x1)) * std::cos(t.j * kPi * x2 / L_);
            return s.real();
        }
    }
    return 0.0;
}

void PermittivityCell::finalize_bounds() {
    if (repr_ == Repr::Grid) {
        auto [mn, mx] = std::minmax_element(grid_.begin(), grid_.end());
        eps_min_ = *mn;
        eps_max_ = *mx;
    } else if (repr_ == Repr::SeparableFourier) {
        // realness check + extrema on a validation grid
        double mn = std::numeric_limits<double>::max(), mx = -mn, worst_imag = 0.0;
        const int P1 = 256, P2 = 64;
        for (int i = 0; i < P1; ++i) {
            const double x1 = (i + 0.5) / P1;
            for (int j = 0; j <= P2; ++j) {
                const double x2 = L_ * j / P2;
                Complex s = 0.0;
                for (const auto& t : terms_)
                    s += t.c * std::exp(kI * (2.0 * kPi * t.m * x1)) *
                         std::cos(t.j * kPi * x2 / L_);
                worst_imag = std::max(worst_imag, std::abs(s.imag()));
                mn = std::min(mn, s.real());
                mx = std::max(mx, s.real());
            }
        }
        if (worst_imag > 1e-10 * std::max(1.0, std::abs(mx)))
            throw std::invalid_argument(
                "Fourier permittivity is not real: missing conjugate-symmetric terms");
        eps_min_ = mn;
        eps_max_ = mx;
    }
    if (eps_min_ <= 0.0)
        throw std::invalid_argument("permittivity must be bounded away from zero; got ess inf " +
                                    std::to_string(eps_min_));
}

bool PermittivityCell::x2_mirror_symmetric(double tol) const {
    if (repr_ == Repr::Constant) return true;
    const int P1 = repr_ == Repr::Grid ? std::max(64, 2 * n1_) : 128;
    const int P2 = repr_ == Repr::Grid ? std::max(64, 2 * n2_) : 64;
    for (int i = 0; i < P1; ++i) {
        const double x1 = (i + 0.5) / P1;
        for (int j = 0; j < P2; ++j) {
            const double x2 = L_ * (j + 0.5) / P2;
            if (std::abs(value(x1, x2) - value(x1, L_ - x2)) > tol) return false;
        }
    }
    return true;
}

}  // namespace floquet
