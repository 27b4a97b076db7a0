// Floquet-mode engine for semi-infinite periodic waveguides: spectra,
// mode families, verification suites, DtN maps, and band-structure sweeps.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "floquet/output.hpp"
#include "floquet/pipeline.hpp"

namespace fs = std::filesystem;
using namespace floquet;

namespace {

struct CliArgs {
    std::string config;
    std::string out = ".";
    int jobs = 1;
    uint64_t seed = 20240901;
};

void write_artifact(const CliArgs& args, const std::string& name, const std::string& content) {
    fs::create_directories(args.out);
    const std::string path = args.out + "/" + name;
    write_file(path, content);
    std::cout << "wrote " << path << "\n";
}

int run_charvals(const CliArgs& args, const RunConfig& cfg) {
    Problem prob = build_problem(cfg);
    write_artifact(args, "charvals.json", charvals_to_json(prob));
    if (cfg.outputs.format == "csv")
        write_artifact(args, "charvals.csv", charvals_to_csv(prob));
    std::cout << prob.resolved.size() << " characteristic values in the strip |Im xi| <= "
              << cfg.im_max << "\n";
    return 0;
}

int run_modes(const CliArgs& args, const RunConfig& cfg) {
    Problem prob = build_problem(cfg);
    write_artifact(args, "modes.json", modes_to_json(prob));
    if (cfg.outputs.grid) {
        for (const auto& m : prob.family.ordered) {
            if (m.n > 4) break;  // dump the leading few field profiles
            write_artifact(args, "mode_" + std::to_string(m.n) + ".csv",
                           mode_grid_csv(prob, m, *cfg.outputs.grid));
        }
    }
    std::cout << "family: " << prob.family.n_right << " right-propagating, "
              << prob.family.ordered.size() - prob.family.n_right
              << " decaying modes enumerated\n";
    return 0;
}

int run_dtn(const CliArgs& args, const RunConfig& cfg) {
    Problem prob = build_problem(cfg);
    DtNMap map = dtn_map(prob.family, prob.cell, cfg.n_tr());
    write_artifact(args, "dtn.json", dtn_to_json(prob, map));
    if (cfg.outputs.format == "csv") write_artifact(args, "dtn.csv", dtn_to_csv(map));
    return 0;
}

// ---------------------------------------------------------------------------

VerifyCheck check_localization(const Problem& prob) {
    VerifyCheck c{"disk_localization", false, false, ""};
    try {
        auto rep = verify_disk_localization(prob.clusters, prob.cover, prob.cell,
                                            prob.cfg.im_max);
        c.pass = rep.ok;
        int checked = 0;
        double worst = 1e300;
        for (const auto& row : rep.rows)
            if (row.required) {
                ++checked;
                worst = std::min(worst, row.margin);
            }
        c.detail = std::to_string(checked) + " strip values, worst margin " +
                   (checked ? format_sci(worst) : "n/a");
        for (const auto& cnt : rep.counts)
            if (cnt.checked && cnt.counted != cnt.expected)
                c.detail += "; component at kappa_inf " + format_sci(cnt.kappa_min) +
                            " counted " + std::to_string(cnt.counted) + " expected " +
                            std::to_string(cnt.expected);
    } catch (const std::exception& e) {
        c.detail = e.what();
    }
    return c;
}

// Brillouin-strip rectangle enclosing the low characteristic values; the
// vertical sides may be shifted to dodge values sitting at the zone edge.
bool pick_rectangle(const Problem& prob, Contour* out) {
    const auto& basis = *prob.basis;
    const int N = prob.cover.N;
    if (N + 1 > basis.size()) return false;
    const double top = 0.5 * (basis.kappa(N) + basis.kappa(N + 1));
    if (basis.kappa(N + 1) - basis.kappa(N) < kPi / basis.L() - 1e-12) return false;
    for (double shift : {0.0, -0.15, 0.15, -0.3, 0.3}) {
        const double lo = -kPi + shift, hi = kPi + shift;
        double clearance = 1e300;
        for (const auto& rc : prob.raw) {
            if (std::abs(rc.xi_raw.imag()) > top + 1.0) continue;
            clearance = std::min({clearance, std::abs(rc.xi_raw.real() - lo),
                                  std::abs(rc.xi_raw.real() - hi)});
        }
        if (clearance > 0.05) {
            *out = Contour::rectangle(lo, hi, -top, top);
            return true;
        }
    }
    return false;
}

VerifyCheck check_strip_count(const Problem& prob) {
    VerifyCheck c{"strip_count", false, false, ""};
    Contour rect;
    if (!pick_rectangle(prob, &rect)) {
        c.skipped = true;
        c.detail = "no admissible rectangle (zone-edge values or kappa gap too small)";
        return c;
    }
    try {
        double defect = 0.0;
        const int n = count_by_contour(prob.cell, rect, 1024, &defect);
        const int expected = 2 * prob.cover.N;
        c.pass = n == expected && defect < 1e-3;
        c.detail = "count " + std::to_string(n) + " expected " + std::to_string(expected) +
                   ", defect " + format_sci(defect);
    } catch (const std::exception& e) {
        c.detail = e.what();
    }
    return c;
}

VerifyCheck check_homotopy(const Problem& prob) {
    VerifyCheck c{"homotopy_count_stability", false, false, ""};
    Contour rect;
    if (!pick_rectangle(prob, &rect)) {
        c.skipped = true;
        c.detail = "no admissible rectangle";
        return c;
    }
    try {
        std::vector<int> counts;
        for (double f : {0.0, 0.25, 0.5, 0.75, 1.0})
            counts.push_back(count_by_contour_mu(prob.cell, f * prob.cell.omega2, rect, 1024));
        c.pass = std::all_of(counts.begin(), counts.end(),
                             [&](int n) { return n == counts.front(); });
        c.detail = "counts";
        for (int n : counts) c.detail += " " + std::to_string(n);
    } catch (const std::exception& e) {
        c.detail = e.what();
    }
    return c;
}

VerifyCheck check_symmetry(const Problem& prob) {
    VerifyCheck c{"spectral_symmetry", false, false, ""};
    double worst = 0.0;
    for (const auto& r : prob.resolved) {
        for (const Complex image : {Complex(-std::conj(r.cv.xi)), std::conj(r.cv.xi)}) {
            if (std::abs(image.imag()) > prob.cfg.im_max) continue;
            double best = 1e300;
            for (const auto& s : prob.resolved)
                best = std::min(best, cylinder_distance(s.cv.xi, image));
            worst = std::max(worst, best);
        }
    }
    c.pass = worst <= 1e-6;
    c.detail = "worst multiset mismatch " + format_sci(worst);
    return c;
}

VerifyCheck check_estimates_suite(const Problem& prob) {
    VerifyCheck c{"mode_estimates", false, false, ""};
    auto rep = check_estimates(prob.family, prob.cover, prob.cell, *prob.basis);
    if (rep.rows.empty()) {
        c.skipped = true;
        c.detail = "no decaying modes inside the disk cover";
        return c;
    }
    c.pass = rep.ok;
    double worst = 1e300;
    for (const auto& row : rep.rows)
        for (int s = 0; s < 7; ++s)
            if (row.checked[s]) worst = std::min(worst, row.rhs[s] - row.lhs[s]);
    c.detail = std::to_string(rep.rows.size()) + " modes, worst margin " + format_sci(worst);
    return c;
}

VerifyCheck check_flux_gram(const Problem& prob) {
    VerifyCheck c{"flux_normalization", false, false, ""};
    std::vector<const FloquetMode*> prop;
    for (const auto& m : prob.family.ordered)
        if (m.cls == ModeClass::RightPropagating) prop.push_back(&m);
    for (const auto& m : prob.family.left)
        if (m.cls == ModeClass::LeftPropagating) prop.push_back(&m);
    if (prob.family.n_real % 2 != 0) {
        c.detail = "odd number of real-quasi-momentum modes: " +
                   std::to_string(prob.family.n_real);
        return c;
    }
    if (prop.empty()) {
        c.pass = true;
        c.detail = "no propagating modes (even count 0)";
        return c;
    }
    double worst = 0.0;
    for (size_t i = 0; i < prop.size(); ++i)
        for (size_t j = 0; j < prop.size(); ++j) {
            const Complex q = flux(*prop[i], *prop[j], prob.cell);
            Complex expect = 0.0;
            if (i == j)
                expect = prop[i]->cls == ModeClass::RightPropagating ? kI : -kI;
            worst = std::max(worst, std::abs(q - expect));
        }
    c.pass = worst <= 1e-8;
    c.detail = "q-Gram error " + format_sci(worst) + ", real count " +
               std::to_string(prob.family.n_real);
    return c;
}

VerifyCheck check_multiplicity_table(const Problem& prob) {
    VerifyCheck c{"multiplicity_table", true, false, ""};
    for (const auto& r : prob.resolved) {
        if (r.cv.cluster_size <= 1) continue;
        c.detail += "xi = (" + format_sci(r.cv.xi.real()) + ", " + format_sci(r.cv.xi.imag()) +
                    ") multiplicity " + std::to_string(r.cv.cluster_size) + " blocks";
        for (int rk : r.cv.partial_null_multiplicities) c.detail += " " + std::to_string(rk);
        c.detail += "; ";
    }
    if (c.detail.empty()) c.detail = "all characteristic values simple";
    return c;
}

VerifyCheck check_monodromy(const Problem& prob, uint64_t seed) {
    VerifyCheck c{"monodromy_consistency", false, false, ""};
    try {
        const int n_tr = std::min<int>(prob.cfg.n_tr(), prob.family.ordered.size());
        if (n_tr < 1) {
            c.skipped = true;
            c.detail = "no modes";
            return c;
        }
        const TraceMatrix F =
            assemble_F(prob.family, TraceOperatorSpec::robin(), prob.cell, n_tr);
        MonodromyForm mono = monodromy(prob.family, TraceOperatorSpec::robin(), F, prob.cell,
                                       prob.resolved, seed);
        c.pass = mono.verification_error <= 1e-7;
        c.detail = "verification error " + format_sci(mono.verification_error) +
                   ", evanescent spectral radius " +
                   format_sci(mono.spectral_radius_evanescent);
    } catch (const std::exception& e) {
        c.skipped = true;
        c.detail = e.what();
    }
    return c;
}

VerifyCheck check_bvp(const Problem& prob, uint64_t seed, const std::string& dump_path) {
    VerifyCheck c{"robin_bvp", false, false, ""};
    if (prob.cfg.eps.repr() == PermittivityCell::Repr::Grid) {
        c.skipped = true;
        c.detail = "pointwise residual is not meaningful for discontinuous permittivities";
        return c;
    }
    try {
        const int n_tr = std::min<int>(prob.cfg.n_tr(), prob.family.ordered.size());
        const TraceMatrix F =
            assemble_F(prob.family, TraceOperatorSpec::robin(), prob.cell, n_tr);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        VectorXcd f(n_tr);
        for (int i = 0; i < n_tr; ++i) f(i) = Complex(normal(rng), normal(rng));
        HalfStripSolution sol = solve_bvp(f, F, prob.family, prob.cell);
        double worst = 0.0;
        const GridSpec grid = prob.cfg.outputs.grid.value_or(GridSpec{});
        for (int i = 1; i < grid.nx1; ++i)
            for (int j = 1; j < grid.nx2; ++j)
                worst = std::max(worst, sol.residual_at(prob.cfg.eps,
                                                        grid.x1_max * i / grid.nx1,
                                                        prob.cfg.L * j / grid.nx2));
        c.pass = worst < 1e-6;
        c.detail = "max residual " + format_sci(worst) + " on a " + std::to_string(grid.nx1) +
                   "x" + std::to_string(grid.nx2) + " grid";
        if (!dump_path.empty() && prob.cfg.outputs.grid) {
            std::string csv = "x1,x2,re_v,im_v\n";
            for (int i = 0; i <= grid.nx1; ++i)
                for (int j = 0; j <= grid.nx2; ++j) {
                    const double x1 = grid.x1_max * i / grid.nx1;
                    const double x2 = prob.cfg.L * j / grid.nx2;
                    const Complex v = sol.evaluate(x1, x2);
                    csv += format_sci(x1) + "," + format_sci(x2) + "," + format_sci(v.real()) +
                           "," + format_sci(v.imag()) + "\n";
                }
            write_file(dump_path, csv);
        }
    } catch (const std::exception& e) {
        c.detail = e.what();
    }
    return c;
}

VerifyCheck check_gap_decay(const Problem& prob, uint64_t seed) {
    VerifyCheck c{"band_gap_decay", false, false, ""};
    if (prob.family.n_real > 0 || prob.family.ordered.empty()) {
        c.skipped = true;
        c.detail = "not a band-gap configuration";
        return c;
    }
    try {
        const int n_tr = std::min<int>(prob.cfg.n_tr(), prob.family.ordered.size());
        const TraceMatrix F =
            assemble_F(prob.family, TraceOperatorSpec::robin(), prob.cell, n_tr);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        VectorXcd f(n_tr);
        for (int i = 0; i < n_tr; ++i) f(i) = Complex(normal(rng), normal(rng));
        HalfStripSolution sol = solve_bvp(f, F, prob.family, prob.cell);
        const double fitted = sol.fitted_decay_rate(2.0, 6.0);
        const double expected = prob.family.ordered.front().xi.imag();
        c.pass = std::abs(fitted - expected) <= 0.05 * expected;
        c.detail = "fitted rate " + format_sci(fitted) + " vs Im xi_1 " + format_sci(expected);
    } catch (const std::exception& e) {
        c.detail = e.what();
    }
    return c;
}

int run_verify(const CliArgs& args, const RunConfig& cfg) {
    Problem prob = build_problem(cfg);
    std::vector<VerifyCheck> checks;
    checks.push_back(check_localization(prob));
    checks.push_back(check_strip_count(prob));
    checks.push_back(check_homotopy(prob));
    checks.push_back(check_symmetry(prob));
    checks.push_back(check_estimates_suite(prob));
    checks.push_back(check_flux_gram(prob));
    checks.push_back(check_multiplicity_table(prob));
    checks.push_back(check_monodromy(prob, args.seed));
    fs::create_directories(args.out);
    checks.push_back(check_bvp(prob, args.seed, args.out + "/solution.csv"));
    checks.push_back(check_gap_decay(prob, args.seed));

    int failures = 0;
    for (const auto& c : checks) {
        const char* status = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
        if (!c.pass && !c.skipped) ++failures;
        std::printf("[%s] %-26s %s\n", status, c.name.c_str(), c.detail.c_str());
    }
    write_artifact(args, "verify.json", verify_to_json(prob, checks));
    return failures;
}

int run_sweep(const CliArgs& args, const RunConfig& cfg) {
    if (!cfg.sweep) throw std::invalid_argument("sweep subcommand needs physics.sweep");
    const SweepSpec& sw = *cfg.sweep;
    std::vector<double> values;
    for (double v = sw.from; v <= sw.to + 1e-12; v += sw.step) values.push_back(v);

    std::vector<SweepPoint> points(values.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            RunConfig point_cfg = cfg;
            point_cfg.sweep.reset();
            if (sw.parameter == "omega2")
                point_cfg.omega2 = values[i];
            else
                point_cfg.bc.beta = values[i];
            SweepPoint pt;
            pt.parameter = values[i];
            Problem prob = build_problem(point_cfg);
            for (const auto& r : prob.resolved)
                if (std::abs(r.cv.xi.imag()) <= point_cfg.tol.real_xi) {
                    pt.n_real += r.cv.cluster_size;
                    pt.real_xi.push_back(r.cv.xi.real());
                }
            pt.n_right = prob.family.n_right;
            for (const auto& m : prob.family.ordered)
                if (m.cls == ModeClass::RightEvanescent) {
                    pt.decay_rate = m.xi.imag();
                    break;
                }
            std::sort(pt.real_xi.begin(), pt.real_xi.end());
            points[i] = std::move(pt);
        }
    };
    const int jobs = std::max(1, args.jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    write_artifact(args, "sweep.json", sweep_to_json(cfg, points));
    if (cfg.outputs.format == "csv") write_artifact(args, "sweep.csv", sweep_to_csv(points));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet-mode engine for semi-infinite periodic waveguides"};
    app.require_subcommand(0, 1);

    CliArgs args;
    std::string subcommand_flag;
    app.add_option("--config", args.config, "run configuration (JSON)");
    app.add_option("--out", args.out, "output directory")->capture_default_str();
    app.add_option("--jobs", args.jobs, "worker pool size for sweeps")->capture_default_str();
    app.add_option("--seed", args.seed, "seed for randomized verification checks")
        ->capture_default_str();
    app.add_option("--subcommand", subcommand_flag,
                   "subcommand name (alternative to the positional form)");

    for (const char* name : {"charvals", "modes", "verify", "dtn", "sweep"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    std::string sub = subcommand_flag;
    for (const auto* s : app.get_subcommands())
        sub = s->get_name();
    if (sub.empty()) {
        std::cerr << "no subcommand given (charvals|modes|verify|dtn|sweep)\n";
        return 2;
    }
    if (args.config.empty()) {
        std::cerr << "--config is required\n";
        return 2;
    }

    try {
        const RunConfig cfg = load_config_file(args.config);
        if (sub == "charvals") return run_charvals(args, cfg);
        if (sub == "modes") return run_modes(args, cfg);
        if (sub == "verify") return run_verify(args, cfg);
        if (sub == "dtn") return run_dtn(args, cfg);
        if (sub == "sweep") return run_sweep(args, cfg);
        std::cerr << "unknown subcommand " << sub << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
