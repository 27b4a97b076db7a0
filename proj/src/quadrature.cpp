#include "floquet/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

namespace floquet {

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("Gauss rule needs at least one node");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Golub-Welsch: eigen-decomposition of the Jacobi matrix
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = 2.0 * v0 * v0;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

GaussRule gauss_on(int n, double a, double b) {
    const GaussRule& base = gauss_legendre(n);
    GaussRule out;
    out.nodes.resize(n);
    out.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = mid + half * base.nodes[i];
        out.weights[i] = half * base.weights[i];
    }
    return out;
}

}  // namespace floquet
