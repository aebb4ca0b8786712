#pragma once

#include "critom/params.hpp"

#include <complex>
#include <vector>

namespace critom {

enum class Stability {
    Unknown,
    Stable,
    Unstable,           // a real eigenvalue crossed into the right half plane
    ParametricUnstable, // a complex-conjugate pair crossed (Hopf side)
};

const char *to_string(Stability s);

// One self-consistent fixed point of the semiclassical equations.
struct SteadyState {
    double x_s = 0.0;                  // mechanical equilibrium position
    std::complex<double> a_s{0.0, 0.0};
    std::complex<double> b_s{0.0, 0.0};
    double delta_eff = 0.0;            // Delta + delta - g1*x_s
    Stability stability = Stability::Unknown;
    bool lorentzian_singular = false;  // delta_eff^2 + kappa_b^2/4 underflowed
};

// Real cubic c3 x^3 + c2 x^2 + c1 x + c0 whose roots are the steady-state
// positions. c0 absorbs the drive term and an optional external force.
struct CubicCoeffs {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

    double eval(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
    double deriv(double x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
    // Standard cubic discriminant; positive sign means three distinct real roots.
    double discriminant() const;
};

// |(i Delta + kappa)(i Delta_eff(x) + kappa_b/2) + g2^2|^2 as a function of x.
// The position equation reads (omega_m x - f) * denom_sq(x) = g1 g2^2 kappa_ex I_in.
double steady_denominator_sq(const SystemParams &p, double x);

CubicCoeffs steady_cubic(const SystemParams &p, double force = 0.0);

// Optical amplitudes for a prescribed mechanical position (2x2 linear solve;
// stays finite when i*Delta_eff + kappa_b/2 vanishes).
void optical_amplitudes(const SystemParams &p, double x,
                        std::complex<double> &a_s, std::complex<double> &b_s);

// All real steady states, sorted ascending in x_s. Each root is polished by a
// damped Newton iteration on the scalar fixed-point map until
// |x - (K/denom_sq(x) + f)/omega_m| < 1e-12 * max(1, |x|).
std::vector<SteadyState> steady_state_roots(const SystemParams &p, double force = 0.0);

// Residuals of the three steady-state equations at (x_s, a_s, b_s);
// used by tests and by the solver's convergence check.
struct SteadyResiduals {
    double position; // x_s - (g1 |b_s|^2 + f)/omega_m
    double mode_a;   // |(i Delta + kappa) a_s + i g2 b_s - sqrt(kappa_ex I_in)|
    double mode_b;   // |(i Delta_eff + kappa_b/2) b_s + i g2 a_s|
};
SteadyResiduals steady_residuals(const SystemParams &p, const SteadyState &ss, double force = 0.0);

// Low-drive position x_s0 = g1 kappa_ex I_in / (omega_m g2^2)  (valid for delta = 0).
double low_drive_position(const SystemParams &p);

// Force-shifted position x_s = f/omega_m + x_s0. regime_warning is set when
// kappa_ex g1 x_s > 0.1 g2^2, outside the approximation's validity band.
struct ForceShift {
    double x_s = 0.0;
    bool regime_warning = false;
};
ForceShift force_shifted_position(const SystemParams &p, double force);

} // namespace critom
