#pragma once

#include "critom/params.hpp"
#include "critom/steady_state.hpp"

#include <complex>
#include <vector>

namespace critom {

// Output field a_out = sqrt(I_in) - sqrt(kappa_ex) a_s for a given
// steady-state optical amplitude.
std::complex<double> output_field(const SystemParams &p, std::complex<double> a_s);

// Transmission T = |1 - sqrt(kappa_ex/I_in) a_s|^2 (input-output relation).
double transmission_full(const SystemParams &p, const SteadyState &ss);

// CRIT-limit transmission T = [1 + kappa^2/(Delta - g2^2/(Delta - g1 x_s))^2]^-1.
// Valid for delta = 0, negligible kappa_b, low drive and kappa_a = kappa_ex;
// the removable singularity at Delta = g1 x_s returns the limit T = 1.
double transmission_crit_approx(const SystemParams &p, double x_s);

struct SpectrumPoint {
    double Delta = 0.0;
    double x_s = 0.0;
    double T = 0.0;
    double phase = 0.0; // arg(a_out / sqrt(I_in)), unwrapped along Delta per branch
    int branch = 0;
    Stability stability = Stability::Unknown;
};

// Transmission/dispersion spectrum across a detuning range. A force f shifts
// the mechanical position through the low-drive relation x_s = f/omega_m + x_s0
// feeding the optical steady state; multi-valued regions are emitted with one
// branch id per coexisting root and never merged. Phases are unwrapped along
// Delta within each branch with a pi-jump threshold.
std::vector<SpectrumPoint> dispersion_spectrum(const SystemParams &p, double delta_min,
                                               double delta_max, int n_points, double force = 0.0,
                                               bool force_via_low_drive = true);

// Phase quadrature sqrt(2) Im(a_out) of the mean output field with the
// mechanical position pinned at x_s.
double steady_phase_quadrature(const SystemParams &p, double x_s);

// Numeric d/df of the steady phase quadrature at f = 0 (central difference).
// force_via_low_drive selects the Eq.-(11)-style position shift; otherwise the
// full cubic is re-solved with the force term and the branch nearest the
// unforced root is used.
double phase_response_slope(const SystemParams &p, double f_step = 1e-6,
                            bool force_via_low_drive = true);

} // namespace critom
