#include "floquet/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace floquet {

using nlohmann::json;

std::string format_sci(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 12);
    return std::string(buf, res.ptr);
}

namespace {

json meta(const Problem& prob) {
    json m;
    m["config_hash"] = config_hash(prob.cfg);
    m["tolerances"] = {{"cluster", prob.cfg.tol.cluster},
                       {"rank", prob.cfg.tol.rank},
                       {"chain", prob.cfg.tol.chain},
                       {"real_xi", prob.cfg.tol.real_xi},
                       {"flux", prob.cfg.tol.flux},
                       {"kernel", prob.cfg.tol.kernel},
                       {"edge_merge", prob.cfg.tol.edge_merge}};
    if (!prob.warnings.empty()) m["warnings"] = prob.warnings;
    return m;
}

}  // namespace

std::string charvals_to_json(const Problem& prob) {
    json j;
    j["meta"] = meta(prob);
    json arr = json::array();
    for (const auto& rc : prob.resolved) {
        json e;
        e["re_xi"] = rc.cv.xi.real();
        e["im_xi"] = rc.cv.xi.imag();
        e["cluster_size"] = rc.cv.cluster_size;
        e["partial_null_multiplicities"] = rc.cv.partial_null_multiplicities;
        e["kernel_dim"] = rc.cv.kernel_dim;
        e["residual"] = rc.cv.residual;
        arr.push_back(e);
    }
    j["characteristic_values"] = arr;
    return j.dump(2) + "\n";
}

std::string charvals_to_csv(const Problem& prob) {
    std::string out = "re_xi,im_xi,cluster_size,partial_null_multiplicities,residual\n";
    for (const auto& rc : prob.resolved) {
        out += format_sci(rc.cv.xi.real()) + "," + format_sci(rc.cv.xi.imag()) + "," +
               std::to_string(rc.cv.cluster_size) + ",";
        for (size_t i = 0; i < rc.cv.partial_null_multiplicities.size(); ++i) {
            if (i) out += ";";
            out += std::to_string(rc.cv.partial_null_multiplicities[i]);
        }
        out += "," + format_sci(rc.cv.residual) + "\n";
    }
    return out;
}

std::string modes_to_json(const Problem& prob) {
    json j;
    j["meta"] = meta(prob);
    j["n_right"] = prob.family.n_right;
    j["n_real"] = prob.family.n_real;
    json arr = json::array();
    const auto& trunc = prob.cell.trunc;
    auto encode = [&](const FloquetMode& m) {
        json e;
        e["n"] = m.n;
        e["re_xi"] = m.xi.real();
        e["im_xi"] = m.xi.imag();
        e["order"] = m.order;
        e["class"] = to_string(m.cls);
        json parts = json::array();
        for (const auto& part : m.parts) {
            json coeffs = json::array();
            for (int f = 0; f < trunc.dim(); ++f) {
                if (std::abs(part(f)) < 1e-15) continue;
                coeffs.push_back({{"l1", trunc.l1_of(f)},
                                  {"l2", trunc.l2_of(f)},
                                  {"re", part(f).real()},
                                  {"im", part(f).imag()}});
            }
            parts.push_back(coeffs);
        }
        e["periodic_parts"] = parts;
        return e;
    };
    for (const auto& m : prob.family.ordered) arr.push_back(encode(m));
    j["modes"] = arr;
    json lft = json::array();
    for (const auto& m : prob.family.left) lft.push_back(encode(m));
    j["left_modes"] = lft;
    return j.dump(2) + "\n";
}

std::string mode_grid_csv(const Problem& prob, const FloquetMode& mode, const GridSpec& grid) {
    std::string out = "x1,x2,re_v,im_v\n";
    for (int i = 0; i <= grid.nx1; ++i) {
        const double x1 = grid.x1_max * i / grid.nx1;
        for (int j = 0; j <= grid.nx2; ++j) {
            const double x2 = prob.cfg.L * j / grid.nx2;
            const Complex v = evaluate_mode(mode, *prob.basis, prob.cell.trunc, x1, x2);
            out += format_sci(x1) + "," + format_sci(x2) + "," + format_sci(v.real()) + "," +
                   format_sci(v.imag()) + "\n";
        }
    }
    return out;
}

std::string dtn_to_json(const Problem& prob, const DtNMap& map) {
    json j;
    j["meta"] = meta(prob);
    j["n_tr"] = map.n_tr;
    j["sigma_min_dirichlet_trace"] = map.smallest_singular_value_FD;
    json rows = json::array();
    for (int r = 0; r < map.n_tr; ++r) {
        json row = json::array();
        for (int c = 0; c < map.n_tr; ++c)
            row.push_back({{"re", map.matrix(r, c).real()}, {"im", map.matrix(r, c).imag()}});
        rows.push_back(row);
    }
    j["matrix"] = rows;  // row = psi index of the Neumann trace, col = psi index of the data
    return j.dump(2) + "\n";
}

std::string dtn_to_csv(const DtNMap& map) {
    std::string out = "row,col,re,im\n";
    for (int r = 0; r < map.n_tr; ++r)
        for (int c = 0; c < map.n_tr; ++c)
            out += std::to_string(r + 1) + "," + std::to_string(c + 1) + "," +
                   format_sci(map.matrix(r, c).real()) + "," +
                   format_sci(map.matrix(r, c).imag()) + "\n";
    return out;
}

std::string sweep_to_json(const RunConfig& cfg, const std::vector<SweepPoint>& pts) {
    json j;
    j["meta"]["config_hash"] = config_hash(cfg);
    j["parameter"] = cfg.sweep ? cfg.sweep->parameter : "omega2";
    json arr = json::array();
    for (const auto& p : pts) {
        json e;
        e["value"] = p.parameter;
        e["real_xi"] = p.real_xi;
        e["n_real"] = p.n_real;
        e["n_right"] = p.n_right;
        e["decay_rate"] = p.decay_rate;
        arr.push_back(e);
    }
    j["points"] = arr;
    return j.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepPoint>& pts) {
    std::string out = "value,n_real,n_right,decay_rate,real_xi\n";
    for (const auto& p : pts) {
        out += format_sci(p.parameter) + "," + std::to_string(p.n_real) + "," +
               std::to_string(p.n_right) + "," + format_sci(p.decay_rate) + ",";
        for (size_t i = 0; i < p.real_xi.size(); ++i) {
            if (i) out += ";";
            out += format_sci(p.real_xi[i]);
        }
        out += "\n";
    }
    return out;
}

std::string verify_to_json(const Problem& prob, const std::vector<VerifyCheck>& checks) {
    json j;
    j["meta"] = meta(prob);
    json arr = json::array();
    bool all = true;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"skipped", c.skipped},
                       {"detail", c.detail}});
        if (!c.pass && !c.skipped) all = false;
    }
    j["checks"] = arr;
    j["all_passed"] = all;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace floquet
