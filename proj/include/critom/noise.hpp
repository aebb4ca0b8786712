#pragma once

#include "critom/params.hpp"
#include "critom/steady_state.hpp"

#include <complex>
#include <vector>

namespace critom {

// Frequency-domain transfer coefficients of the linearized chain at resonant
// operation (Delta = delta = 0), phase convention b_s real. Normalized units
// throughout: hbar = m = 1 with omega_m as the anchor (presets use omega_m = 1).
struct TransferSet {
    double omega = 0.0;
    std::complex<double> chi_m;  // mechanical susceptibility
    std::complex<double> A;      // (kappa_b/2 - i w)(kappa - i w) + g2^2
    std::complex<double> chi_b;
    std::complex<double> chi_F;
    std::complex<double> chi_Xd, chi_Yd;
    std::complex<double> chi_Xac, chi_Yac;
    std::complex<double> chi_Xbc, chi_Ybc;
    std::complex<double> prefactor; // chi_b g2 sqrt(kappa_ex)/(kappa - i w)
};

TransferSet transfer_set(const SystemParams &p, const SteadyState &ss, double omega);

// Input quadrature amplitudes feeding the output phase quadrature.
struct NoiseInputs {
    std::complex<double> X_d{0.0}, Y_d{0.0};   // drive fluctuations
    std::complex<double> X_ac{0.0}, Y_ac{0.0}; // mode-a vacuum
    std::complex<double> X_bc{0.0}, Y_bc{0.0}; // mode-b vacuum
    std::complex<double> xi_m{0.0};            // Brownian force
    std::complex<double> f{0.0};               // deterministic external force
};

// Y_out = prefactor * (chi_F (xi_m + f) + chi_Xd X_d + ... + chi_Ybc Y_bc).
std::complex<double> output_phase_quadrature(const SystemParams &p, const SteadyState &ss,
                                             double omega, const NoiseInputs &in);

// Static approximation Y_out^f = sqrt(2 I_in) kappa_ex g1 (f + omega_m x_s0)/(omega_m g2^2).
double analytic_phase_response(const SystemParams &p, double f);

// One frequency point of the effective force noise. Vacuum/drive quadratures
// carry white PSD 1/2; thermal_psd is 2 m gamma_m k_B T_R in the same
// normalized force^2/bandwidth units (0 for a zero-temperature bath).
struct PsdPoint {
    double omega = 0.0;
    double S_shot = 0.0;
    double S_th = 0.0;
    double S_total = 0.0;
    double sensitivity = 0.0; // sqrt(S_total)
};
PsdPoint force_noise_psd(const SystemParams &p, const SteadyState &ss, double omega,
                         double thermal_psd = 0.0);

struct PsdReport {
    std::vector<PsdPoint> points;
};
PsdReport force_noise_spectrum(const SystemParams &p, const SteadyState &ss,
                               const std::vector<double> &omega_grid, double thermal_psd = 0.0);

// DC shot-noise PSD in units of hbar m omega_m^2, closed form valid for
// kappa_a, kappa_b << g2, kappa_ex:
//   S/4 = (1/2) u^3 - u + (9/2)/u  with  u = g2^2/(kappa g1 x_s) ... /4.
double dc_shot_psd_closed_form(const SystemParams &p, const SteadyState &ss);

// Same bracket as a function of u alone (units of hbar m omega_m^2).
double dc_shot_bracket(double u);

struct SensitivityOptimum {
    double u_star = 0.0;    // optimal g2^2/(kappa g1 x_s)
    double S_min = 0.0;     // minimal DC shot PSD [hbar m omega_m^2]
    double g2_star = 0.0;   // optimal coupling at this steady state's kappa g1 x_s
    double u_star_analytic = 0.0; // root of (3/2) u^4 - u^2 - 9/2 = 0
};

// Golden-section minimization of the DC bracket (tolerance 1e-6 in u).
SensitivityOptimum optimize_coupling(const SystemParams &p, const SteadyState &ss);

struct PhysicalSensitivity {
    double shot_noise_floor = 0.0; // sqrt(S_min hbar m omega_m^2)  [N/sqrt(Hz)]
    double thermal_floor = 0.0;    // sqrt(2 m gamma_m k_B T)       [N/sqrt(Hz)]
    double s_min_factor = 0.0;     // S_min in units of hbar m omega_m^2
};
PhysicalSensitivity physical_sensitivity(const PhysicalParams &phys);

} // namespace critom
