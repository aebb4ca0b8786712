#pragma once

#include "critom/params.hpp"
#include "critom/steady_state.hpp"

#include <array>
#include <vector>

namespace critom {

using State6 = std::array<double, 6>; // [x, p, X_a, Y_a, X_b, Y_b]

// Deterministic semiclassical equations of motion (noise terms dropped), with
// the complex modes split into quadratures and the drive entering mode a as
// the constant source sqrt(2 kappa_ex I_in) on X_a.
State6 equations_of_motion(const SystemParams &p, const State6 &y, double force = 0.0);

// Quadrature state of a steady state.
State6 steady_state_vector(const SteadyState &ss);

struct IntegratorOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 1.0;
    double force = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State6> states;
    SystemParams params;
};

// Adaptive Dormand-Prince 5(4) integration from t = 0 to t_end; every accepted
// step is recorded. Throws StepUnderflow if the step collapses below 1e-12.
Trajectory integrate(const SystemParams &p, const State6 &initial_state, double t_end,
                     const IntegratorOptions &opts = {});

struct LimitCycle {
    double period = 0.0;      // units of 1/omega_m
    double amplitude_x = 0.0; // peak-to-peak x excursion
    bool converged = false;   // successive-period drift below 1e-3 relative
    int n_periods = 0;
};

// Discards the leading transient_fraction of the trajectory, locates x-maxima
// (parabolic refinement over sample triples) and estimates period and
// amplitude. Throws NoOscillation if fewer than 3 maxima survive the cut.
LimitCycle detect_limit_cycle(const Trajectory &traj, double transient_fraction = 0.5);

} // namespace critom
