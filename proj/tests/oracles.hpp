#pragma once

// Independent reference implementations used by the unit and acceptance
// suites. Everything here deliberately avoids the library's solution paths:
// roots come from a dense scan plus bisection, transfer coefficients from a
// direct complex 5x5 solve.

#include "critom/noise.hpp"
#include "critom/params.hpp"
#include "critom/steady_state.hpp"

#include <complex>
#include <random>
#include <vector>

namespace critom::oracles {

// All fixed points of x -> (g1 g2^2 |a_s(x)|^2 / (Delta_eff(x)^2 + kb^2/4) + f)/omega_m,
// found by evaluating the map residual on a fine grid over a root bound and
// bisecting every sign change.
std::vector<double> dense_scan_roots(const SystemParams &p, double force = 0.0,
                                     int grid_points = 8000);

// Transfer coefficients obtained by solving the five linearized
// frequency-domain equations directly for each input channel.
struct TransferOracle {
    std::complex<double> chi_F;
    std::complex<double> chi_Xd, chi_Yd;
    std::complex<double> chi_Xac, chi_Yac;
    std::complex<double> chi_Xbc, chi_Ybc;
};
TransferOracle solve_linear_response(const SystemParams &p, const SteadyState &ss, double omega);

// Reproducible random parameter draws with omega_m = 1 (moderate rates, no
// pathological corners).
SystemParams random_params(std::mt19937_64 &rng);

} // namespace critom::oracles
