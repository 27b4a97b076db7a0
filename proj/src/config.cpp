#include "floquet/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace floquet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config error at " + path + ": " + what);
}

double parse_length(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
        if (s == "pi") return kPi;
        if (s == "2pi" || s == "2*pi") return 2.0 * kPi;
        if (s == "pi/2") return kPi / 2.0;
        if (s == "pi/4") return kPi / 4.0;
        // forms a*pi and pi/b
        if (auto star = s.find("*pi"); star != std::string::npos && star + 3 == s.size()) {
            try {
                return std::stod(s.substr(0, star)) * kPi;
            } catch (...) {
            }
        }
        if (s.rfind("pi/", 0) == 0) {
            try {
                return kPi / std::stod(s.substr(3));
            } catch (...) {
            }
        }
        try {
            return std::stod(s);
        } catch (...) {
        }
        fail(path, "cannot parse length expression '" + s + "'");
    }
    fail(path, "expected a number or a pi-expression string");
}

BoundaryKind parse_kind(const std::string& s, const std::string& path) {
    if (s == "dirichlet") return BoundaryKind::Dirichlet;
    if (s == "neumann") return BoundaryKind::Neumann;
    if (s == "mixed") return BoundaryKind::Mixed;
    if (s == "quasiperiodic") return BoundaryKind::QuasiPeriodic;
    fail(path, "unknown boundary kind '" + s +
                   "' (expected dirichlet|neumann|mixed|quasiperiodic)");
}

std::vector<double> read_csv_grid(const std::string& file, int* n1, int* n2) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open permittivity CSV " + file);
    std::vector<double> vals;
    std::string line;
    int cols = -1, rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        int c = 0;
        while (std::getline(ss, tok, ',')) {
            vals.push_back(std::stod(tok));
            ++c;
        }
        if (cols < 0) cols = c;
        if (c != cols)
            throw std::invalid_argument("ragged permittivity CSV " + file + " at row " +
                                        std::to_string(rows));
        ++rows;
    }
    *n1 = cols;
    *n2 = rows;
    return vals;
}

PermittivityCell parse_permittivity(const json& j, double L, const std::string& base_dir,
                                    const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::string type = j.value("type", "");
    if (type == "constant") {
        if (!j.contains("value")) fail(path + "/value", "missing");
        return PermittivityCell::constant(j["value"].get<double>());
    }
    if (type == "grid") {
        if (j.contains("csv")) {
            int n1 = 0, n2 = 0;
            std::string file = j["csv"].get<std::string>();
            if (!file.empty() && file[0] != '/') file = base_dir + "/" + file;
            auto vals = read_csv_grid(file, &n1, &n2);
            return PermittivityCell::grid(n1, n2, std::move(vals), L);
        }
        if (!j.contains("values")) fail(path + "/values", "missing (inline rows or csv)");
        const auto& rows = j["values"];
        if (!rows.is_array() || rows.empty() || !rows[0].is_array())
            fail(path + "/values", "expected an array of row arrays (x1 across columns)");
        const int n2 = static_cast<int>(rows.size());
        const int n1 = static_cast<int>(rows[0].size());
        std::vector<double> vals;
        for (int r = 0; r < n2; ++r) {
            if (static_cast<int>(rows[r].size()) != n1)
                fail(path + "/values/" + std::to_string(r), "ragged row");
            for (const auto& v : rows[r]) vals.push_back(v.get<double>());
        }
        return PermittivityCell::grid(n1, n2, std::move(vals), L);
    }
    if (type == "separable_fourier") {
        if (!j.contains("terms")) fail(path + "/terms", "missing");
        std::vector<PermittivityCell::FourierTerm> terms;
        for (const auto& t : j["terms"]) {
            PermittivityCell::FourierTerm ft;
            ft.m = t.value("m", 0);
            ft.j = t.value("j", 0);
            ft.c = Complex(t.value("re", 0.0), t.value("im", 0.0));
            terms.push_back(ft);
        }
        return PermittivityCell::separable_fourier(std::move(terms), L);
    }
    fail(path + "/type", "unknown permittivity type '" + type +
                             "' (expected constant|grid|separable_fourier)");
}

}  // namespace

RunConfig load_config(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;

    if (!j.contains("geometry")) fail("/geometry", "missing");
    const auto& g = j["geometry"];
    cfg.L = parse_length(g.contains("L") ? g["L"] : json(), "/geometry/L");
    if (cfg.L <= 0.0) fail("/geometry/L", "must be positive");
    if (!g.contains("boundary")) fail("/geometry/boundary", "missing");
    cfg.bc.kind = parse_kind(g["boundary"].get<std::string>(), "/geometry/boundary");
    if (cfg.bc.kind == BoundaryKind::QuasiPeriodic) {
        if (!g.contains("beta")) fail("/geometry/beta", "required for quasiperiodic boundaries");
        cfg.bc.beta = parse_length(g["beta"], "/geometry/beta");
        if (cfg.bc.beta < 0.0 || cfg.bc.beta >= 2.0 * kPi)
            fail("/geometry/beta", "must lie in [0, 2*pi)");
    } else if (g.contains("beta")) {
        fail("/geometry/beta", "only allowed for quasiperiodic boundaries");
    }

    if (!j.contains("physics")) fail("/physics", "missing");
    const auto& p = j["physics"];
    if (p.contains("omega2")) {
        cfg.omega2 = p["omega2"].get<double>();
        if (cfg.omega2 <= 0.0) fail("/physics/omega2", "must be positive");
    }
    if (p.contains("sweep")) {
        SweepSpec s;
        const auto& sj = p["sweep"];
        s.parameter = sj.value("parameter", "omega2");
        if (s.parameter != "omega2" && s.parameter != "beta")
            fail("/physics/sweep/parameter", "expected omega2 or beta");
        if (!sj.contains("from") || !sj.contains("to") || !sj.contains("step"))
            fail("/physics/sweep", "needs from/to/step");
        s.from = sj["from"].get<double>();
        s.to = sj["to"].get<double>();
        s.step = sj["step"].get<double>();
        if (s.step <= 0.0 || s.to < s.from) fail("/physics/sweep", "empty or backwards range");
        if (s.parameter == "beta" && cfg.bc.kind != BoundaryKind::QuasiPeriodic)
            fail("/physics/sweep/parameter", "beta sweeps need quasiperiodic boundaries");
        cfg.sweep = s;
    } else if (!p.contains("omega2")) {
        fail("/physics/omega2", "missing (or provide a sweep)");
    }
    if (!p.contains("permittivity")) fail("/physics/permittivity", "missing");
    cfg.eps = parse_permittivity(p["permittivity"], cfg.L, base_dir, "/physics/permittivity");

    if (!j.contains("numerics")) fail("/numerics", "missing");
    const auto& n = j["numerics"];
    cfg.M1 = n.value("M1", 3);
    cfg.M2 = n.value("M2", 6);
    if (cfg.M1 < 0) fail("/numerics/M1", "must be >= 0");
    if (cfg.M2 < 2) fail("/numerics/M2", "must be >= 2");
    cfg.N_tr = n.value("N_tr", 0);
    if (cfg.N_tr < 0 || cfg.N_tr > cfg.M2)
        fail("/numerics/N_tr", "must lie in 1..M2 (or 0 for the default)");
    cfg.im_max = n.value("im_max", 4.0);
    if (cfg.im_max <= 0.0) fail("/numerics/im_max", "must be positive");
    if (n.contains("tolerances")) {
        const auto& t = n["tolerances"];
        cfg.tol.cluster = t.value("cluster", cfg.tol.cluster);
        cfg.tol.rank = t.value("rank", cfg.tol.rank);
        cfg.tol.chain = t.value("chain", cfg.tol.chain);
        cfg.tol.real_xi = t.value("real_xi", cfg.tol.real_xi);
        cfg.tol.flux = t.value("flux", cfg.tol.flux);
        cfg.tol.kernel = t.value("kernel", cfg.tol.kernel);
        cfg.tol.edge_merge = t.value("edge_merge", cfg.tol.edge_merge);
    }

    if (j.contains("outputs")) {
        const auto& o = j["outputs"];
        cfg.outputs.format = o.value("format", "json");
        if (cfg.outputs.format != "json" && cfg.outputs.format != "csv")
            fail("/outputs/format", "expected json or csv");
        if (o.contains("grid")) {
            GridSpec gs;
            gs.nx1 = o["grid"].value("nx1", 40);
            gs.nx2 = o["grid"].value("nx2", 40);
            gs.x1_max = o["grid"].value("x1_max", 2.0);
            if (gs.nx1 < 2 || gs.nx2 < 2) fail("/outputs/grid", "grid must be at least 2x2");
            cfg.outputs.grid = gs;
        }
    }

    // mirror symmetry requirement for beta in {0, pi}
    if (cfg.bc.beta_requires_symmetry() && !cfg.eps.x2_mirror_symmetric(1e-12))
        fail("/physics/permittivity",
             "beta in {0, pi} requires the x2-mirror symmetry eps(x1,x2) = eps(x1,L-x2)");

    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto dir = path.find_last_of('/') == std::string::npos
                   ? std::string(".")
                   : path.substr(0, path.find_last_of('/'));
    return load_config(ss.str(), dir);
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["geometry"]["L"] = cfg.L;
    j["geometry"]["boundary"] = to_string(cfg.bc.kind);
    if (cfg.bc.kind == BoundaryKind::QuasiPeriodic) j["geometry"]["beta"] = cfg.bc.beta;
    j["physics"]["omega2"] = cfg.omega2;
    if (cfg.sweep) {
        j["physics"]["sweep"] = {{"parameter", cfg.sweep->parameter},
                                 {"from", cfg.sweep->from},
                                 {"to", cfg.sweep->to},
                                 {"step", cfg.sweep->step}};
    }
    switch (cfg.eps.repr()) {
        case PermittivityCell::Repr::Constant:
            j["physics"]["permittivity"] = {{"type", "constant"},
                                            {"value", cfg.eps.constant_value()}};
            break;
        case PermittivityCell::Repr::Grid: {
            j["physics"]["permittivity"]["type"] = "grid";
            j["physics"]["permittivity"]["n1"] = cfg.eps.grid_n1();
            j["physics"]["permittivity"]["n2"] = cfg.eps.grid_n2();
            json rows = json::array();
            for (int r = 0; r < cfg.eps.grid_n2(); ++r) {
                json row = json::array();
                for (int c = 0; c < cfg.eps.grid_n1(); ++c) {
                    const double x1 = (c + 0.5) / cfg.eps.grid_n1();
                    const double x2 = cfg.L * (r + 0.5) / cfg.eps.grid_n2();
                    row.push_back(cfg.eps.value(x1, x2));
                }
                rows.push_back(row);
            }
            j["physics"]["permittivity"]["values"] = rows;
            break;
        }
        case PermittivityCell::Repr::SeparableFourier:
            j["physics"]["permittivity"]["type"] = "separable_fourier";
            break;
    }
    j["numerics"] = {{"M1", cfg.M1},     {"M2", cfg.M2},
                     {"N_tr", cfg.n_tr()}, {"im_max", cfg.im_max}};
    j["numerics"]["tolerances"] = {
        {"cluster", cfg.tol.cluster},   {"rank", cfg.tol.rank},
        {"chain", cfg.tol.chain},       {"real_xi", cfg.tol.real_xi},
        {"flux", cfg.tol.flux},         {"kernel", cfg.tol.kernel},
        {"edge_merge", cfg.tol.edge_merge}};
    j["outputs"]["format"] = cfg.outputs.format;
    return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
    const std::string s = config_to_json(cfg);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace floquet
