#pragma once

#include <vector>

#include "floquet/types.hpp"

namespace floquet {

/// Permittivity on the periodicity cell (0,1) x (0,L). 1-periodicity in x1 is
/// structural: evaluation wraps x1 into [0,1).
class PermittivityCell {
  public:
    enum class Repr { Constant, Grid, SeparableFourier };

    struct FourierTerm {
        int m = 0;   // x1 frequency, exp(2*pi*i*m*x1)
        int j = 0;   // x2 half-wave count, cos(j*pi*x2/L)
        Complex c;   // coefficient; realness requires c(-m,j) = conj(c(m,j))
    };

    static PermittivityCell constant(double value);
    /// values are row-major with x1 across columns: values[row*n1 + col] is the
    /// cell (x1 in [col/n1,(col+1)/n1), x2 in [row*L/n2,(row+1)*L/n2)).
    static PermittivityCell grid(int n1, int n2, std::vector<double> values, double L);
    static PermittivityCell separable_fourier(std::vector<FourierTerm> terms, double L);

    Repr repr() const { return repr_; }
    double eps_min() const { return eps_min_; }
    double eps_max() const { return eps_max_; }
    double L() const { return L_; }
    int grid_n1() const { return n1_; }
    int grid_n2() const { return n2_; }
    double constant_value() const { return constant_; }

    /// Point evaluation; x1 is wrapped into [0,1), x2 must lie in [0,L].
    double value(double x1, double x2) const;

    /// Checks eps(x1, x2) = eps(x1, L - x2) on a validation grid.
    bool x2_mirror_symmetric(double tol = 1e-12) const;

  private:
    Repr repr_ = Repr::Constant;
    double constant_ = 1.0;
    int n1_ = 0, n2_ = 0;
    std::vector<double> grid_;
    std::vector<FourierTerm> terms_;
    double L_ = 1.0;
    double eps_min_ = 1.0, eps_max_ = 1.0;

    void finalize_bounds();
};

}  // namespace floquet
