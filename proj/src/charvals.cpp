#include "floquet/charvals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "floquet/quadrature.hpp"

namespace floquet {

namespace {
constexpr double kEdgeBand = 0.05;  // |Re xi| within this of pi counts as edge

int edge_side(Complex xi) {
    if (xi.real() > kPi - kEdgeBand) return +1;
    if (xi.real() < -kPi + kEdgeBand) return -1;
    return 0;
}
}  // namespace

std::vector<RawCharval> solve_all_charvals(const CellMatrices& cell, double im_max) {
    if (im_max <= 0.0) throw std::invalid_argument("im_max must be positive");
    const int n = cell.dim();
    if (n < 8) throw std::invalid_argument("truncation dimension must be >= 8");

    // companion linearization of xi^2 I + xi C + (K - omega2 E)
    MatrixXcd A = MatrixXcd::Zero(2 * n, 2 * n);
    A.topRightCorner(n, n) = MatrixXcd::Identity(n, n);
    A.bottomLeftCorner(n, n) = cell.omega2 * cell.E;
    for (int i = 0; i < n; ++i) {
        A(n + i, i) -= cell.K_diag(i);
        A(n + i, n + i) = -cell.C_diag(i);
    }

    Eigen::ComplexEigenSolver<MatrixXcd> es(A, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("companion eigensolver failed to converge");

    std::vector<RawCharval> out;
    for (int i = 0; i < 2 * n; ++i) {
        const Complex xi_raw = es.eigenvalues()(i);
        if (std::abs(xi_raw.imag()) > im_max) continue;
        RawCharval rc;
        rc.xi_raw = xi_raw;
        rc.xi = normalize_quasimomentum(xi_raw, &rc.shift);
        rc.kernel_vec = es.eigenvectors().col(i).head(n);
        const double nrm = rc.kernel_vec.norm();
        if (nrm > 0.0) rc.kernel_vec /= nrm;
        out.push_back(std::move(rc));
    }
    std::sort(out.begin(), out.end(), [](const RawCharval& a, const RawCharval& b) {
        if (a.xi.imag() != b.xi.imag()) return a.xi.imag() < b.xi.imag();
        if (a.xi.real() != b.xi.real()) return a.xi.real() < b.xi.real();
        return a.shift < b.shift;
    });
    return out;
}

std::vector<Cluster> cluster_charvals(const std::vector<RawCharval>& raws,
                                      const Tolerances& tol) {
    const int n = static_cast<int>(raws.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double scale =
                std::max({1.0, std::abs(raws[i].xi), std::abs(raws[j].xi)});
            const double d = cylinder_distance(raws[i].xi, raws[j].xi);
            bool merge = d <= tol.cluster * scale;
            if (!merge && edge_side(raws[i].xi) != 0 && edge_side(raws[j].xi) != 0)
                merge = d <= tol.edge_merge * scale;  // Brillouin-edge twins
            if (merge) parent[find(i)] = find(j);
        }

    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

    std::vector<Cluster> clusters;
    for (auto& [root, idx] : groups) {
        // a cluster must contain a copy solved inside (or at the edge of) the
        // fundamental strip; clusters made of far 2*pi-translates only are
        // truncation shadows of values represented elsewhere
        bool central = false;
        for (int i : idx)
            if (std::abs(raws[i].xi_raw.real()) <= kPi + kEdgeBand) central = true;
        if (!central) continue;

        Cluster c;
        for (int i : idx) c.members.push_back(raws[i]);

        // Partition members into translate groups keyed by (shift, edge side).
        // Each group sees the same characteristic value through a different
        // 2*pi translate; multiplicities must be read off one group only.
        std::map<std::pair<int, int>, std::vector<int>> tg;
        for (size_t m = 0; m < c.members.size(); ++m) {
            const auto& rc = c.members[m];
            tg[{rc.shift, edge_side(rc.xi)}].push_back(static_cast<int>(m));
        }
        size_t best_count = 0;
        double best_center_dist = 0.0;
        std::vector<int> best;
        for (auto& [key, mem] : tg) {
            double cd = 0.0;
            for (int m : mem) cd += std::abs(c.members[m].xi_raw.real());
            cd /= mem.size();
            if (mem.size() > best_count ||
                (mem.size() == best_count && cd < best_center_dist)) {
                best_count = mem.size();
                best_center_dist = cd;
                best = mem;
            }
        }
        c.representative_members = best;
        c.count = static_cast<int>(best.size());

        // cylinder mean over the centrally solved copies; averaging both edge
        // twins puts zone-edge values at Re = +-pi up to the solver's own
        // symmetry defect
        const Complex ref = c.members[best.front()].xi;
        Complex acc = 0.0;
        int n_central = 0;
        for (const auto& m : c.members) {
            if (std::abs(m.xi_raw.real()) > kPi + kEdgeBand) continue;
            acc += Complex(ref.real() + std::remainder(m.xi.real() - ref.real(), 2.0 * kPi),
                           m.xi.imag());
            ++n_central;
        }
        c.xi0 = normalize_quasimomentum(acc / static_cast<double>(n_central));

        // working point: where the truncated pencil is actually singular (raw
        // plane, no wrapping -- the truncation is not 2*pi-periodic)
        Complex work = 0.0;
        for (int m : best) work += c.members[m].xi_raw;
        c.xi_work = work / static_cast<double>(best.size());
        clusters.push_back(std::move(c));
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.xi0.imag() != b.xi0.imag()) return a.xi0.imag() < b.xi0.imag();
        return a.xi0.real() < b.xi0.real();
    });
    return clusters;
}

namespace {

// Block lower-triangular Toeplitz matrix T_k of the pencil's Taylor
// coefficients at xi0: row j holds B_{j-i} acting on x_i, with B_0 = B(xi0),
// B_1 = B'(xi0) (diagonal), B_2 = -I, higher coefficients zero. Its kernel
// dimension equals sum_j min(r_j, k+1) over the partial multiplicities.
MatrixXcd toeplitz_block(const MatrixXcd& B0, const VectorXcd& b1, int k) {
    const int n = static_cast<int>(B0.rows());
    MatrixXcd T = MatrixXcd::Zero((k + 1) * n, (k + 1) * n);
    for (int j = 0; j <= k; ++j) {
        T.block(j * n, j * n, n, n) = B0;
        if (j + 1 <= k) T.block((j + 1) * n, j * n, n, n) = b1.asDiagonal();
        if (j + 2 <= k)
            T.block((j + 2) * n, j * n, n, n) = -MatrixXcd::Identity(n, n);
    }
    return T;
}

int kernel_dimension(const Eigen::BDCSVD<MatrixXcd>& svd, double rel_tol) {
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const double cutoff = rel_tol * s(0);
    int null_dim = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) <= cutoff) ++null_dim;
    return null_dim;
}

}  // namespace

ResolvedCharval resolve_multiplicity(const Cluster& cluster, const CellMatrices& cell,
                                     const Tolerances& tol) {
    const int n = cell.dim();
    // kernel and chains are extracted where the truncated pencil is singular;
    // the reported value keeps the symmetrized representative
    const Complex xi0 = cluster.xi_work;
    const MatrixXcd B0 = assemble_B(cell, xi0);
    const VectorXcd b1 = B_prime_diag(cell, xi0);

    Eigen::BDCSVD<MatrixXcd> svd(B0, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const int alpha = kernel_dimension(svd, tol.rank);
    if (alpha == 0)
        throw std::runtime_error("cluster at xi = (" + std::to_string(xi0.real()) + ", " +
                                 std::to_string(xi0.imag()) +
                                 ") has no kernel at the rank tolerance");
    const double residual = svd.singularValues()(n - 1);
    if (residual > tol.kernel)
        throw std::runtime_error("kernel residual " + std::to_string(residual) +
                                 " exceeds tolerance at xi = (" + std::to_string(xi0.real()) +
                                 ", " + std::to_string(xi0.imag()) + ")");

    ResolvedCharval out;
    out.cv.xi = cluster.xi0;
    out.cv.xi_work = xi0;
    out.cv.cluster_size = cluster.count;
    out.cv.kernel_dim = alpha;
    out.cv.residual = residual;

    std::vector<int> ranks;
    std::vector<MatrixXcd> null_bases;  // null space of T_k, k = 0, 1, ...
    {
        MatrixXcd V0 = svd.matrixV().rightCols(alpha);
        null_bases.push_back(V0);
    }

    if (cluster.count == 1 && alpha == 1) {
        ranks = {1};
    } else {
        // kernel dimensions of the Toeplitz blocks give the Weyr data
        std::vector<int> d{alpha};
        for (int k = 1; k <= cluster.count + 1; ++k) {
            const MatrixXcd Tk = toeplitz_block(B0, b1, k);
            Eigen::BDCSVD<MatrixXcd> tsvd(Tk, Eigen::ComputeFullV);
            const int dk = kernel_dimension(tsvd, tol.rank);
            null_bases.push_back(tsvd.matrixV().rightCols(dk));
            if (dk == d.back()) break;  // no chains longer than k
            d.push_back(dk);
        }
        // m_k = number of chains of length >= k
        std::vector<int> m;
        m.push_back(d[0]);
        for (size_t k = 1; k < d.size(); ++k) m.push_back(d[k] - d[k - 1]);
        for (int j = 1; j <= m[0]; ++j) {
            int r = 0;
            for (int mk : m)
                if (mk >= j) ++r;
            ranks.push_back(r);
        }
        std::sort(ranks.rbegin(), ranks.rend());
        const int total = std::accumulate(ranks.begin(), ranks.end(), 0);
        if (total != cluster.count)
            throw std::runtime_error(
                "multiplicity resolution failure at xi = (" + std::to_string(xi0.real()) +
                ", " + std::to_string(xi0.imag()) + "): cluster size " +
                std::to_string(cluster.count) + " vs chain total " + std::to_string(total));
    }
    out.cv.partial_null_multiplicities = ranks;

    // Extract chains, maximal rank first. The null space of T_{r-1} holds the
    // leading segments of all chains with rank >= r; its first-block rows span
    // exactly the corresponding eigenvector heads.
    MatrixXcd heads(n, 0);
    for (int r : ranks) {
        if (static_cast<int>(null_bases.size()) < r)
            throw std::runtime_error("internal: missing Toeplitz null basis for rank " +
                                     std::to_string(r));
        const MatrixXcd& Z = null_bases[r - 1];
        MatrixXcd Z0 = Z.topRows(n);
        if (heads.cols() > 0) {
            Eigen::HouseholderQR<MatrixXcd> qr(heads);
            MatrixXcd Q = qr.householderQ() * MatrixXcd::Identity(n, heads.cols());
            Z0 -= Q * (Q.adjoint() * Z0);
        }
        Eigen::BDCSVD<MatrixXcd> zsvd(Z0, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const VectorXcd coeff = zsvd.matrixV().col(0);
        VectorXcd chain_vec = Z * coeff;
        const double head_norm = chain_vec.head(n).norm();
        if (head_norm < tol.rank)
            throw std::runtime_error("degenerate chain head during Jordan extraction");
        chain_vec /= head_norm;

        std::vector<VectorXcd> chain;
        for (int k = 0; k < r; ++k) chain.push_back(chain_vec.segment(k * n, n));
        out.chains.chains.push_back(std::move(chain));

        heads.conservativeResize(n, heads.cols() + 1);
        heads.col(heads.cols() - 1) = out.chains.chains.back()[0];
    }

    // chain condition residuals
    const double scale = svd.singularValues()(0);
    for (const auto& chain : out.chains.chains) {
        for (size_t k = 0; k < chain.size(); ++k) {
            VectorXcd res = B0 * chain[k];
            if (k >= 1) res += b1.asDiagonal() * chain[k - 1];
            if (k >= 2) res -= chain[k - 2];  // (1/2) B'' = -I
            if (res.norm() > tol.chain * scale * 10.0)
                throw std::runtime_error("Jordan chain residual " + std::to_string(res.norm()) +
                                         " too large at xi = (" + std::to_string(xi0.real()) +
                                         ", " + std::to_string(xi0.imag()) + ")");
        }
    }
    // heads linearly independent at the rank tolerance
    if (static_cast<int>(out.chains.chains.size()) > 1) {
        MatrixXcd H(n, out.chains.chains.size());
        for (size_t j = 0; j < out.chains.chains.size(); ++j) H.col(j) = out.chains.chains[j][0];
        Eigen::BDCSVD<MatrixXcd> hsvd(H);
        if (hsvd.singularValues()(hsvd.singularValues().size() - 1) < tol.rank)
            throw std::runtime_error("canonical eigenvector system is rank deficient");
    }
    return out;
}

// ---------------------------------------------------------------------------
// contour counting

Contour Contour::circle(Complex c, double r) {
    Contour k;
    k.kind = Kind::Circle;
    k.center = c;
    k.radius = r;
    return k;
}

Contour Contour::rectangle(double re_min, double re_max, double im_min, double im_max) {
    Contour k;
    k.kind = Kind::Rectangle;
    k.re_min = re_min;
    k.re_max = re_max;
    k.im_min = im_min;
    k.im_max = im_max;
    return k;
}

Contour Contour::two_disks(Complex c1, double r1, Complex c2, double r2) {
    Contour k;
    k.kind = Kind::TwoDisks;
    k.center = c1;
    k.radius = r1;
    k.center2 = c2;
    k.radius2 = r2;
    return k;
}

namespace {

struct QuadPoint {
    Complex z;
    Complex weight;  // includes dz and quadrature weight
};

// Composite 16-point Gauss points along the straight segment [a, b].
void add_segment(std::vector<QuadPoint>& pts, Complex a, Complex b, int segments) {
    const GaussRule& g = gauss_legendre(16);
    const Complex d = b - a;
    for (int s = 0; s < segments; ++s) {
        const double t0 = static_cast<double>(s) / segments;
        const double t1 = static_cast<double>(s + 1) / segments;
        for (int i = 0; i < 16; ++i) {
            const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g.nodes[i];
            pts.push_back({a + t * d, 0.5 * (t1 - t0) * g.weights[i] * d});
        }
    }
}

// Composite Gauss points along the arc theta in [t0, t1] of a circle.
void add_arc(std::vector<QuadPoint>& pts, Complex c, double r, double t0, double t1,
             int total_points) {
    const int segments = std::max(1, total_points / 16);
    const GaussRule& g = gauss_legendre(16);
    for (int s = 0; s < segments; ++s) {
        const double a = t0 + (t1 - t0) * s / segments;
        const double b = t0 + (t1 - t0) * (s + 1) / segments;
        for (int i = 0; i < 16; ++i) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i];
            const Complex z = c + r * std::exp(kI * t);
            const Complex dz = kI * r * std::exp(kI * t);
            pts.push_back({z, 0.5 * (b - a) * g.weights[i] * dz});
        }
    }
}

std::vector<QuadPoint> contour_points(const Contour& contour, int n_quad) {
    std::vector<QuadPoint> pts;
    switch (contour.kind) {
        case Contour::Kind::Circle: {
            // trapezoid rule: equispaced, spectrally accurate
            const int N = std::max(16, n_quad);
            for (int q = 0; q < N; ++q) {
                const double t = 2.0 * kPi * q / N;
                const Complex e = std::exp(kI * t);
                pts.push_back({contour.center + contour.radius * e,
                               2.0 * kPi / N * kI * contour.radius * e});
            }
            break;
        }
        case Contour::Kind::Rectangle: {
            const Complex a(contour.re_min, contour.im_min);
            const Complex b(contour.re_max, contour.im_min);
            const Complex c(contour.re_max, contour.im_max);
            const Complex d(contour.re_min, contour.im_max);
            const int per_side = std::max(1, n_quad / (4 * 16));
            add_segment(pts, a, b, per_side);
            add_segment(pts, b, c, per_side);
            add_segment(pts, c, d, per_side);
            add_segment(pts, d, a, per_side);
            break;
        }
        case Contour::Kind::TwoDisks: {
            const Complex c1 = contour.center, c2 = contour.center2;
            const double r1 = contour.radius, r2 = contour.radius2;
            const double d = std::abs(c2 - c1);
            if (d >= r1 + r2)
                throw std::invalid_argument("two-disk contour requires overlapping disks");
            if (d + std::min(r1, r2) <= std::max(r1, r2))
                throw std::invalid_argument("two-disk contour: one disk contains the other");
            const double phi = std::arg(c2 - c1);
            const double a1 = std::acos((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1));
            const double a2 = std::acos((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2));
            // arc of circle 1 outside circle 2, then arc of circle 2 outside circle 1
            add_arc(pts, c1, r1, phi + a1, phi + 2.0 * kPi - a1, n_quad / 2);
            add_arc(pts, c2, r2, phi + kPi + a2, phi + 3.0 * kPi - a2, n_quad / 2);
            break;
        }
    }
    return pts;
}

int count_impl(const CellMatrices& cell, double mu, const Contour& contour, int n_quad,
               double* rounding_defect) {
    if (n_quad < 64) throw std::invalid_argument("contour quadrature needs n_quad >= 64");
    const auto pts = contour_points(contour, n_quad);
    const int n = cell.dim();
    Complex integral = 0.0;
    for (const auto& p : pts) {
        const MatrixXcd B = assemble_B(cell, p.z, mu);
        Eigen::PartialPivLU<MatrixXcd> lu(B);
        // cheap singularity guard from the LU diagonal
        const VectorXd du = lu.matrixLU().diagonal().cwiseAbs();
        if (du.minCoeff() < 1e-13 * std::max(1.0, du.maxCoeff()))
            throw std::runtime_error("contour passes too close to a characteristic value");
        const MatrixXcd Binv = lu.solve(MatrixXcd::Identity(n, n));
        const VectorXcd bp = B_prime_diag(cell, p.z);
        Complex tr = 0.0;
        for (int i = 0; i < n; ++i) tr += Binv(i, i) * bp(i);
        integral += p.weight * tr;
    }
    integral /= 2.0 * kPi * kI;
    const double rounded = std::round(integral.real());
    const double defect = std::abs(integral - rounded);
    if (rounding_defect) *rounding_defect = defect;
    if (defect > 0.1)
        throw std::runtime_error(
            "contour count defect " + std::to_string(defect) +
            ": contour too close to a characteristic value or quadrature under-resolved");
    return static_cast<int>(rounded);
}

}  // namespace

int count_by_contour(const CellMatrices& cell, const Contour& contour, int n_quad,
                     double* rounding_defect) {
    return count_impl(cell, cell.omega2, contour, n_quad, rounding_defect);
}

int count_by_contour_mu(const CellMatrices& cell, double mu, const Contour& contour,
                        int n_quad, double* rounding_defect) {
    return count_impl(cell, mu, contour, n_quad, rounding_defect);
}

// ---------------------------------------------------------------------------
// disk cover

double DiskCover::top() const {
    double t = 0.0;
    for (const auto& comp : components)
        for (const auto& d : comp.disks) t = std::max(t, d.kappa + d.radius);
    return t;
}

DiskCover build_disk_cover(const CellMatrices& cell, const CrossSectionBasis& basis,
                           int depth) {
    if (depth < 1) throw std::invalid_argument("disk cover depth must be >= 1");
    const double L = basis.L();
    const double bound = cell.omega2 * cell.eps_max * std::max(1.0, L) / kPi;

    int first = 0;
    for (int l2 = 1; l2 <= basis.size(); ++l2)
        if (basis.kappa(l2) > bound) {
            first = l2;
            break;
        }
    if (first == 0) throw std::runtime_error("cross-section basis too short for the disk cover");
    const int N = first + 1;
    if (N + depth + 1 > basis.size())
        throw std::runtime_error("cross-section basis too short for " + std::to_string(depth) +
                                 " disks above the cutoff (need " + std::to_string(N + depth + 1) +
                                 " modes, have " + std::to_string(basis.size()) + ")");

    std::vector<Disk> disks;
    for (int l2 = N; l2 < N + depth; ++l2) {
        Disk d;
        d.l2 = l2;
        d.kappa = basis.kappa(l2);
        d.radius = cell.omega2 * cell.eps_max / d.kappa;
        if (d.radius >= kPi)
            throw std::runtime_error("disk radius exceeds the Brillouin strip half-width");
        // degenerate transverse pairs share one disk
        if (!disks.empty() && disks.back().kappa == d.kappa) continue;
        disks.push_back(d);
    }

    auto overlaps = [](const Disk& a, const Disk& b) {
        return std::abs(a.kappa - b.kappa) < a.radius + b.radius;
    };

    DiskCover cover;
    cover.N = N;
    cover.cutoff = bound;
    cover.kappa_N = basis.kappa(N);
    for (size_t i = 1; i + 1 < disks.size(); ++i)
        if (overlaps(disks[i - 1], disks[i]) && overlaps(disks[i], disks[i + 1]))
            cover.pairwise_overlaps_only = false;

    DiskComponent current;
    for (size_t i = 0; i < disks.size(); ++i) {
        if (!current.disks.empty() && !overlaps(current.disks.back(), disks[i])) {
            cover.components.push_back(std::move(current));
            current = {};
        }
        current.disks.push_back(disks[i]);
    }
    if (!current.disks.empty()) cover.components.push_back(std::move(current));

    for (auto& comp : cover.components) {
        comp.kappa_inf = std::numeric_limits<double>::max();
        for (const auto& d : comp.disks)
            comp.kappa_inf = std::min(comp.kappa_inf, d.kappa - d.radius);
        // symbols sigma_l inside: |Re sigma| = 2*pi*|l1| > pi excludes l1 != 0
        for (int l2 = 1; l2 <= basis.size(); ++l2)
            for (const auto& d : comp.disks)
                if (std::abs(basis.kappa(l2) - d.kappa) < d.radius) {
                    comp.indices.emplace_back(0, l2);
                    break;
                }
        comp.expected_count = static_cast<int>(comp.indices.size());
    }
    return cover;
}

LocalizationReport verify_disk_localization(const std::vector<Cluster>& clusters,
                                            const DiskCover& cover, const CellMatrices& cell,
                                            double im_max, int n_quad) {
    LocalizationReport report;
    for (const auto& c : clusters) {
        LocalizationRow row;
        row.xi = c.xi0;
        row.required = c.xi0.imag() >= cover.kappa_N;
        row.margin = -std::numeric_limits<double>::max();
        for (const auto& comp : cover.components)
            for (const auto& d : comp.disks)
                row.margin = std::max(row.margin,
                                      d.radius - std::abs(c.xi0 - Complex(0.0, d.kappa)));
        row.contained = row.margin > 0.0;
        if (row.required && !row.contained) report.ok = false;
        if (row.required || row.contained) report.rows.push_back(row);
    }

    for (const auto& comp : cover.components) {
        ComponentCountRow row;
        row.kappa_min = comp.kappa_inf;
        row.expected = comp.expected_count;
        double top = 0.0;
        for (const auto& d : comp.disks) top = std::max(top, d.kappa + d.radius);
        if (top > im_max) {
            row.checked = false;  // beyond the solved strip; cannot verify
            report.counts.push_back(row);
            continue;
        }
        if (comp.disks.size() > 2) {
            row.checked = false;  // contour over longer chains is not implemented
            report.counts.push_back(row);
            continue;
        }
        Contour contour =
            comp.disks.size() == 1
                ? Contour::circle(Complex(0.0, comp.disks[0].kappa), comp.disks[0].radius)
                : Contour::two_disks(Complex(0.0, comp.disks[0].kappa), comp.disks[0].radius,
                                     Complex(0.0, comp.disks[1].kappa), comp.disks[1].radius);
        row.counted = count_by_contour(cell, contour, n_quad, &row.defect);
        row.checked = true;
        if (row.counted != row.expected) report.ok = false;
        report.counts.push_back(row);
    }
    return report;
}

}  // namespace floquet
