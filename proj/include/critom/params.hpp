#pragma once

#include <string>

namespace critom {

// Normalized model parameters. All rates are measured in units of the
// mechanical frequency omega_m (the normalization anchor, default 1); I_in is
// a dimensionless photon flux.
//
// Frequency conventions:
//   Delta = omega_a - omega_in   (drive detuning from the ring resonance)
//   delta = omega_b - omega_a    (toroid/ring mode offset)
struct SystemParams {
    double kappa_a = 0.0;  // intrinsic decay of ring mode a
    double kappa_b = 0.0;  // total decay of toroid mode b
    double kappa_ex = 0.0; // ring-waveguide out-coupling
    double delta = 0.0;    // optical mode offset omega_b - omega_a
    double Delta = 0.0;    // drive detuning omega_a - omega_in
    double g1 = 0.0;       // optomechanical coupling (per unit x)
    double g2 = 0.0;       // inter-resonator coupling
    double omega_m = 1.0;  // mechanical frequency
    double gamma_m = 0.0;  // mechanical damping
    double I_in = 0.0;     // drive intensity (photon flux)

    // kappa = (kappa_a + kappa_ex)/2, always derived, never stored.
    double kappa() const { return 0.5 * (kappa_a + kappa_ex); }

    // Throws InvalidParams if any rate is negative or a value is non-finite.
    void validate() const;

    // Same parameter set rescaled so omega_m = 1. Idempotent.
    SystemParams normalized() const;
};

// Laboratory-frame parameters. to_normalized() is the only place dimensional
// constants (hbar, k_B, zero-point length) enter the library.
struct PhysicalParams {
    double omega_m_si = 0.0;   // mechanical angular frequency [rad/s]
    double mass = 0.0;         // effective mass [kg]
    double gamma_m_si = 0.0;   // mechanical damping [rad/s]
    double g1_si = 0.0;        // optomechanical coupling [rad/s per m]
    double g2_si = 0.0;        // inter-resonator coupling [rad/s]
    double kappa_a_si = 0.0;   // [rad/s]
    double kappa_b_si = 0.0;   // [rad/s]
    double kappa_ex_si = 0.0;  // [rad/s]
    double input_power = 0.0;  // drive power [W]
    double temperature = 0.0;  // bath temperature T_R [K]
    double laser_omega_si = kDefaultLaserOmega; // drive laser angular frequency [rad/s]

    // 2*pi*c / 1550 nm; used only to convert input_power to photon flux.
    static constexpr double kDefaultLaserOmega = 1.215227e15;

    void validate() const;

    // Divides every rate by omega_m_si; converts g1 through the zero-point
    // length and input_power through the photon energy. Normalizing the
    // result again is a no-op.
    SystemParams to_normalized() const;

    // Zero-point spread of the dimensionless-x convention, sqrt(hbar/(m*omega_m)).
    double x_scale() const;
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double k_B = 1.380649e-23;     // J/K
} // namespace constants

} // namespace critom
