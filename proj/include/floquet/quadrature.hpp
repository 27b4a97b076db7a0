#pragma once

#include <utility>
#include <vector>

namespace floquet {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule with n points (Golub-Welsch). Cached per n.
const GaussRule& gauss_legendre(int n);

/// Rule mapped to (a, b).
GaussRule gauss_on(int n, double a, double b);

}  // namespace floquet
