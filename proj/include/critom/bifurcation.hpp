#pragma once

#include "critom/params.hpp"
#include "critom/steady_state.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace critom {

enum class Region { I, II, III }; // stable / multistable / parametric unstable

const char *to_string(Region r);

struct RegionCell {
    int root_count = 0;
    Region region = Region::I;
    bool solver_failed = false;
};

struct RegionMap {
    std::vector<double> delta_grid; // ascending
    std::vector<double> iin_grid;   // ascending
    std::vector<RegionCell> cells;  // row-major, index = i_iin * n_delta + i_delta

    const RegionCell &at(std::size_t i_delta, std::size_t i_iin) const {
        return cells[i_iin * delta_grid.size() + i_delta];
    }
    RegionCell &at(std::size_t i_delta, std::size_t i_iin) {
        return cells[i_iin * delta_grid.size() + i_delta];
    }
};

// Classifies every node of an (Delta, I_in) grid. Per-node solver failures are
// flagged on the cell, never thrown. threads = 0 uses the hardware count.
RegionMap scan_plane(const SystemParams &base, double delta_min, double delta_max, double iin_min,
                     double iin_max, int n_delta, int n_iin, int threads = 0);

struct BoundaryPoint {
    double Delta = 0.0;
    double I_in = 0.0;
};

enum class BoundaryKind { SaddleNode, Hopf };

struct BoundaryCurve {
    BoundaryKind kind = BoundaryKind::SaddleNode;
    std::vector<BoundaryPoint> points; // chained polyline
};

// Cubic discriminant at one plane point (positive sign: three real roots).
double cubic_discriminant_at(const SystemParams &base, double Delta, double iin);

// Largest real part over complex eigenvalue pairs, maximized over all steady
// states at the point; -inf when no complex pair exists. Crosses zero on the
// Hopf boundary.
double hopf_margin_at(const SystemParams &base, double Delta, double iin);

// All discriminant-sign crossings on the scan grid's edges, bisected to high
// precision and chained into polylines. Throws TraceLost when a requested seed
// has no crossing anywhere in the window.
std::vector<BoundaryCurve> trace_saddle_node(const SystemParams &base, const RegionMap &map);
std::vector<BoundaryCurve> trace_hopf(const SystemParams &base, const RegionMap &map);

// Single curve starting from the crossing nearest the seed point (the spec's
// seed-cell entry point).
BoundaryCurve trace_saddle_node_from(const SystemParams &base, const RegionMap &map,
                                     BoundaryPoint seed);
BoundaryCurve trace_hopf_from(const SystemParams &base, const RegionMap &map, BoundaryPoint seed);

struct BranchPoint {
    double Delta = 0.0;
    double x_s = 0.0;
    double T = 0.0;
    Stability stability = Stability::Unknown;
};

enum class BranchLabel { Main, Isola };

struct BranchCurve {
    std::vector<BranchPoint> points;
    bool closed = false;
    BranchLabel label = BranchLabel::Main;
};

// Pseudo-arclength continuation of the steady-state curve F(x, Delta) = 0 at
// fixed I_in over [delta_min, delta_max]. Returns the branch(es) reaching the
// window boundary plus every detached closed curve, flagged as isolas. Isolas
// are found by re-seeding from dense-scan roots not covered by traced curves.
std::vector<BranchCurve> sweep_branch(const SystemParams &base, double iin_fixed,
                                      double delta_min, double delta_max, double step);

enum class SweepDirection { Up, Down };

struct HysteresisPoint {
    double Delta = 0.0;
    double x_s = 0.0;
    Stability stability = Stability::Unknown;
    bool jumped = false; // the followed branch vanished between this step and the last
};

// Quasi-static sweep following the nearest non-saddle root (basin following).
// start_x selects the initial branch; by default the lowest stable root.
std::vector<HysteresisPoint> hysteresis_sweep(const SystemParams &base, double iin_fixed,
                                              double delta_min, double delta_max,
                                              SweepDirection direction, double step,
                                              std::optional<double> start_x = std::nullopt);

} // namespace critom
