#include "floquet/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floquet {

bool BoundaryCondition::beta_requires_symmetry(double tol) const {
    if (kind != BoundaryKind::QuasiPeriodic) return false;
    return std::abs(beta) <= tol || std::abs(beta - kPi) <= tol;
}

const char* to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::Dirichlet: return "dirichlet";
        case BoundaryKind::Neumann: return "neumann";
        case BoundaryKind::Mixed: return "mixed";
        case BoundaryKind::QuasiPeriodic: return "quasiperiodic";
    }
    return "?";
}

void CrossSectionBasis::check_index(int n) const {
    if (n < 1 || n > size())
        throw std::out_of_range("cross-section mode index " + std::to_string(n) +
                                " outside built range 1.." + std::to_string(size()));
}

double CrossSectionBasis::kappa(int n) const {
    check_index(n);
    return kappas_[n - 1];
}

int CrossSectionBasis::raw_index(int n) const {
    check_index(n);
    return raw_[n - 1];
}

double CrossSectionBasis::sobolev_weight(int n, double s) const {
    check_index(n);
    const double k = kappas_[n - 1];
    return std::pow(1.0 + k * k, s);
}

Complex CrossSectionBasis::psi(int n, double x2) const {
    check_index(n);
    const int k = raw_[n - 1];
    switch (bc_.kind) {
        case BoundaryKind::Dirichlet:
            return std::sqrt(2.0 / L_) * std::sin(kPi * k * x2 / L_);
        case BoundaryKind::Neumann:
            if (k == 0) return std::sqrt(1.0 / L_);
            return std::sqrt(2.0 / L_) * std::cos(kPi * k * x2 / L_);
        case BoundaryKind::Mixed:
            return std::sqrt(2.0 / L_) * std::sin(kPi * (2 * k - 1) * x2 / (2.0 * L_));
        case BoundaryKind::QuasiPeriodic: {
            const double w = (bc_.beta + 2.0 * kPi * k) / L_;
            return std::sqrt(1.0 / L_) * std::exp(kI * (w * x2));
        }
    }
    return {};
}

Complex CrossSectionBasis::psi_dd(int n, double x2) const {
    check_index(n);
    const int k = raw_[n - 1];
    double w = 0.0;
    switch (bc_.kind) {
        case BoundaryKind::Dirichlet:
        case BoundaryKind::Neumann: w = kPi * k / L_; break;
        case BoundaryKind::Mixed: w = kPi * (2 * k - 1) / (2.0 * L_); break;
        case BoundaryKind::QuasiPeriodic: w = (bc_.beta + 2.0 * kPi * k) / L_; break;
    }
    return -w * w * psi(n, x2);
}

CrossSectionBasis build_basis(const BoundaryCondition& bc, double L, int count) {
    if (L <= 0.0) throw std::invalid_argument("cross-section width must be positive");
    if (count < 2) throw std::invalid_argument("at least two cross-section modes are required");
    if (bc.kind == BoundaryKind::QuasiPeriodic &&
        (bc.beta < 0.0 || bc.beta >= 2.0 * kPi))
        throw std::invalid_argument("quasi-periodic beta must lie in [0, 2*pi)");

    std::vector<std::pair<double, int>> pairs;  // (kappa, raw index)
    switch (bc.kind) {
        case BoundaryKind::Dirichlet:
            for (int k = 1; k <= count; ++k) pairs.emplace_back(kPi * k / L, k);
            break;
        case BoundaryKind::Neumann:
            for (int k = 0; k < count; ++k) pairs.emplace_back(kPi * k / L, k);
            break;
        case BoundaryKind::Mixed:
            for (int k = 1; k <= count; ++k) pairs.emplace_back(kPi * (2 * k - 1) / (2.0 * L), k);
            break;
        case BoundaryKind::QuasiPeriodic:
            for (int k = -(count + 1); k <= count + 1; ++k)
                pairs.emplace_back(std::abs(bc.beta + 2.0 * kPi * k) / L, k);
            break;
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;  // equal kappa: lower raw index first
    });
    pairs.resize(count);

    CrossSectionBasis basis;
    basis.L_ = L;
    basis.bc_ = bc;
    for (const auto& [k, raw] : pairs) {
        basis.kappas_.push_back(k);
        basis.raw_.push_back(raw);
    }

    if (bc.kind != BoundaryKind::QuasiPeriodic) {
        basis.delta_gamma_ = kPi / (2.0 * L);
    } else if (bc.beta_requires_symmetry()) {
        basis.delta_gamma_ = kPi / L;
    } else {
        double d = std::numeric_limits<double>::max();
        for (int l = 0; l <= 3; ++l) d = std::min(d, std::abs(l * kPi - bc.beta) / L);
        basis.delta_gamma_ = d;
    }
    return basis;
}

}  // namespace floquet
