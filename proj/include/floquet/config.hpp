#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floquet/cross_section.hpp"
#include "floquet/permittivity.hpp"
#include "floquet/types.hpp"

namespace floquet {

struct SweepSpec {
    std::string parameter;  // "omega2" or "beta"
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
};

struct GridSpec {
    int nx1 = 40;
    int nx2 = 40;
    double x1_max = 2.0;
};

struct OutputSpec {
    std::string format = "json";  // "json" or "csv" (json always written)
    std::optional<GridSpec> grid;
};

struct RunConfig {
    // geometry
    double L = kPi;
    BoundaryCondition bc;
    // physics
    double omega2 = 1.0;
    std::optional<SweepSpec> sweep;
    PermittivityCell eps = PermittivityCell::constant(1.0);
    // numerics
    int M1 = 3;
    int M2 = 6;
    int N_tr = 0;  // 0: default to M2
    double im_max = 4.0;
    Tolerances tol;

    OutputSpec outputs;

    int n_tr() const { return N_tr > 0 ? N_tr : M2; }
};

/// Parses and schema-validates a config. Error messages carry the JSON path
/// of the offending entry. `base_dir` resolves relative CSV paths.
RunConfig load_config(const std::string& json_text, const std::string& base_dir = ".");
RunConfig load_config_file(const std::string& path);

/// Canonical serialization (sorted keys) of the effective config.
std::string config_to_json(const RunConfig& cfg);

/// FNV-1a hash of the canonical serialization, hex-encoded.
std::string config_hash(const RunConfig& cfg);

}  // namespace floquet
