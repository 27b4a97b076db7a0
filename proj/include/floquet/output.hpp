#pragma once

#include <string>
#include <vector>

#include "floquet/halfguide.hpp"
#include "floquet/pipeline.hpp"

namespace floquet {

/// Locale-independent %.12e formatting.
std::string format_sci(double v);

std::string charvals_to_json(const Problem& prob);
std::string charvals_to_csv(const Problem& prob);

std::string modes_to_json(const Problem& prob);
/// Grid dump of the summed family members or one mode: x1, x2, Re v, Im v.
std::string mode_grid_csv(const Problem& prob, const FloquetMode& mode, const GridSpec& grid);

std::string dtn_to_json(const Problem& prob, const DtNMap& map);
std::string dtn_to_csv(const DtNMap& map);

struct SweepPoint {
    double parameter = 0.0;
    std::vector<double> real_xi;
    int n_real = 0;   // real quasi-momenta counted with multiplicity
    int n_right = 0;  // right-propagating count
    double decay_rate = 0.0;  // Im xi_{n_right+1}
};

std::string sweep_to_json(const RunConfig& cfg, const std::vector<SweepPoint>& pts);
std::string sweep_to_csv(const std::vector<SweepPoint>& pts);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

std::string verify_to_json(const Problem& prob, const std::vector<VerifyCheck>& checks);

void write_file(const std::string& path, const std::string& content);

}  // namespace floquet
