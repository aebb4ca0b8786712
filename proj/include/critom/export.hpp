#pragma once

#include "critom/bifurcation.hpp"
#include "critom/dynamics.hpp"
#include "critom/noise.hpp"
#include "critom/params.hpp"
#include "critom/response.hpp"
#include "critom/stability.hpp"
#include "critom/steady_state.hpp"

#include <string>
#include <vector>

namespace critom {

inline constexpr const char *kToolVersion = "0.1.0";

// Reproducibility header prepended to every output file: tool version,
// command line and the effective parameter set. No wall-clock data, so
// identical configs produce byte-identical files.
struct Provenance {
    std::string command_line;
    std::vector<std::pair<std::string, double>> params;
};

std::string provenance_header(const Provenance &prov);

// Deterministic shortest round-trip formatting of a double.
std::string format_double(double v);

struct ClassifiedState {
    SteadyState state;
    StabilityReport report;
};

std::string steady_csv(const Provenance &prov, const std::vector<ClassifiedState> &states);
std::string region_map_csv(const Provenance &prov, const RegionMap &map);
std::string boundary_csv(const Provenance &prov, const std::vector<BoundaryCurve> &curves);
std::string branch_csv(const Provenance &prov, const std::vector<BranchCurve> &curves);
std::string hysteresis_csv(const Provenance &prov, const std::vector<HysteresisPoint> &up,
                           const std::vector<HysteresisPoint> &down);
std::string trajectory_csv(const Provenance &prov, const Trajectory &traj);
std::string phase_portrait_csv(const Provenance &prov, const Trajectory &traj);
std::string spectrum_csv(const Provenance &prov, const std::vector<SpectrumPoint> &points);
std::string psd_csv(const Provenance &prov, const PsdReport &report);

// JSON envelope with provenance and a named payload produced by the csv
// writers' data (used for --format json).
std::string json_envelope(const Provenance &prov, const std::string &kind,
                          const std::string &payload_json);

void write_text_file(const std::string &path, const std::string &content);

} // namespace critom
