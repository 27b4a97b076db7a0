#include "floquet/pipeline.hpp"

#include <algorithm>

namespace floquet {

Problem build_problem(const RunConfig& cfg) {
    Problem prob;
    prob.cfg = cfg;

    // oversize the transverse basis: disk bookkeeping walks past M2
    int count = cfg.M2 + 8;
    std::shared_ptr<CrossSectionBasis> basis;
    for (;;) {
        basis = std::make_shared<CrossSectionBasis>(build_basis(cfg.bc, cfg.L, count));
        // enough modes above the cutoff to cover the solved strip
        const double cutoff = cfg.omega2 * cfg.eps.eps_max() * std::max(1.0, cfg.L) / kPi;
        if (basis->kappa(count - 2) > std::max(cutoff, cfg.im_max) + 2.0 || count > 4096)
            break;
        count *= 2;
    }
    prob.basis = basis;

    PlaneTruncation trunc{cfg.M1, cfg.M2};
    prob.cell = assemble_epsilon(cfg.eps, trunc, prob.basis, cfg.omega2);

    prob.raw = solve_all_charvals(prob.cell, cfg.im_max);
    prob.clusters = cluster_charvals(prob.raw, cfg.tol);
    for (const auto& c : prob.clusters)
        prob.resolved.push_back(resolve_multiplicity(c, prob.cell, cfg.tol));

    // disk cover over the solved strip
    {
        int depth = 1;
        const auto& b = *prob.basis;
        // find N the same way the builder does to size the depth
        const double cutoff = cfg.omega2 * cfg.eps.eps_max() * std::max(1.0, cfg.L) / kPi;
        int first = 0;
        for (int l2 = 1; l2 <= b.size(); ++l2)
            if (b.kappa(l2) > cutoff) {
                first = l2;
                break;
            }
        const int N = first + 1;
        while (N + depth + 1 < b.size() &&
               b.kappa(N + depth - 1) - cfg.omega2 * cfg.eps.eps_max() / b.kappa(N + depth - 1) <
                   cfg.im_max + 1.0)
            ++depth;
        prob.cover = build_disk_cover(prob.cell, *prob.basis, depth);
        if (cfg.im_max > prob.cover.top())
            prob.warnings.push_back(
                "im_max exceeds the disk-validated strip; quasi-momenta above " +
                std::to_string(prob.cover.top()) + " are unvalidated");
    }

    prob.family = classify_and_normalize(prob.resolved, prob.cell, *prob.basis, cfg.tol);
    return prob;
}

}  // namespace floquet
