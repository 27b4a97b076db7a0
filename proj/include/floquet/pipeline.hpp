#pragma once

#include <memory>
#include <string>
#include <vector>

#include "floquet/charvals.hpp"
#include "floquet/config.hpp"
#include "floquet/halfguide.hpp"
#include "floquet/modes.hpp"

namespace floquet {

/// Everything derived from one config at one frequency.
struct Problem {
    RunConfig cfg;
    std::shared_ptr<const CrossSectionBasis> basis;
    CellMatrices cell;
    std::vector<RawCharval> raw;
    std::vector<Cluster> clusters;
    std::vector<ResolvedCharval> resolved;
    DiskCover cover;
    ModeFamily family;
    std::vector<std::string> warnings;
};

/// Runs the full pipeline: basis, permittivity projection, pencil spectrum,
/// clustering, multiplicity resolution, disk cover, mode classification.
Problem build_problem(const RunConfig& cfg);

}  // namespace floquet
