#include "critom/noise.hpp"

#include "critom/errors.hpp"

#include <cmath>

namespace critom {

using complexd = std::complex<double>;

TransferSet transfer_set(const SystemParams &p, const SteadyState &ss, double omega) {
    const double kap = p.kappa();
    const double wm = p.omega_m;
    const double G = p.g1 * ss.x_s;       // g1 x_s
    const double bs = std::abs(ss.b_s);   // phase convention: b_s real
    const complexd kc(kap, -omega);       // kappa - i w
    const complexd kb2(p.kappa_b / 2.0, -omega);

    TransferSet ts;
    ts.omega = omega;
    ts.chi_m = 1.0 / complexd(wm * wm - omega * omega, -p.gamma_m * omega); // m = 1
    ts.A = kb2 * kc + p.g2 * p.g2;

    const complexd chi_b_inv =
        ts.A * ts.A + G * G * kc * kc * (1.0 + 2.0 * wm * wm * ts.chi_m);
    if (std::abs(chi_b_inv) < 1e-14)
        throw SingularChiB("|chi_b^-1| = " + std::to_string(std::abs(chi_b_inv)));
    ts.chi_b = 1.0 / chi_b_inv;

    const double rt_ex = std::sqrt(p.kappa_ex);
    const double rt_a = std::sqrt(p.kappa_a);
    const double rt_b = std::sqrt(p.kappa_b);

    ts.chi_F = -std::sqrt(2.0) * ts.chi_m * G * p.g1 * bs * kc * kc;
    ts.chi_Xd = G * p.g2 * rt_ex * kc;
    ts.chi_Yd = rt_ex * (ts.A * p.g2 + (kc - p.kappa_ex) / (ts.chi_b * p.g2 * p.kappa_ex));
    ts.chi_Xac = G * p.g2 * rt_a * kc;
    ts.chi_Yac = rt_a * (ts.A * p.g2 - 1.0 / (p.g2 * ts.chi_b));
    ts.chi_Xbc = ts.A * rt_b * kc;
    ts.chi_Ybc = -G * rt_b * kc * kc;
    ts.prefactor = ts.chi_b * p.g2 * rt_ex / kc;
    return ts;
}

complexd output_phase_quadrature(const SystemParams &p, const SteadyState &ss, double omega,
                                 const NoiseInputs &in) {
    const TransferSet ts = transfer_set(p, ss, omega);
    const complexd bracket = ts.chi_F * (in.xi_m + in.f) + ts.chi_Xd * in.X_d +
                             ts.chi_Yd * in.Y_d + ts.chi_Xac * in.X_ac + ts.chi_Yac * in.Y_ac +
                             ts.chi_Xbc * in.X_bc + ts.chi_Ybc * in.Y_bc;
    return ts.prefactor * bracket;
}

double analytic_phase_response(const SystemParams &p, double f) {
    const double x_s0 = low_drive_position(p);
    return std::sqrt(2.0 * p.I_in) * p.kappa_ex * p.g1 / (p.omega_m * p.g2 * p.g2) *
           (f + p.omega_m * x_s0);
}

PsdPoint force_noise_psd(const SystemParams &p, const SteadyState &ss, double omega,
                         double thermal_psd) {
    const TransferSet ts = transfer_set(p, ss, omega);
    if (std::abs(ts.chi_F) < 1e-14)
        throw SingularChiF("|chi_F| = " + std::to_string(std::abs(ts.chi_F)));

    PsdPoint pt;
    pt.omega = omega;
    const complexd i{0.0, 1.0};
    pt.S_shot = 0.5 * std::norm((ts.chi_Xd - i * ts.chi_Yd) / ts.chi_F) +
                0.5 * std::norm((ts.chi_Xac - i * ts.chi_Yac) / ts.chi_F) +
                0.5 * std::norm((ts.chi_Xbc - i * ts.chi_Ybc) / ts.chi_F);
    pt.S_th = thermal_psd;
    pt.S_total = pt.S_shot + pt.S_th;
    pt.sensitivity = std::sqrt(pt.S_total);
    return pt;
}

PsdReport force_noise_spectrum(const SystemParams &p, const SteadyState &ss,
                               const std::vector<double> &omega_grid, double thermal_psd) {
    PsdReport rep;
    rep.points.reserve(omega_grid.size());
    for (double w : omega_grid)
        rep.points.push_back(force_noise_psd(p, ss, w, thermal_psd));
    return rep;
}

double dc_shot_bracket(double u) {
    if (u <= 0.0)
        throw DivisionByZero("dc_shot_bracket requires u > 0");
    return 0.25 * (0.5 * u * u * u - u + 4.5 / u);
}

double dc_shot_psd_closed_form(const SystemParams &p, const SteadyState &ss) {
    const double G = p.g1 * ss.x_s;
    if (G == 0.0)
        throw DivisionByZero("dc_shot_psd_closed_form requires g1 x_s != 0");
    const double u = p.g2 * p.g2 / (p.kappa() * G);
    return dc_shot_bracket(u);
}

SensitivityOptimum optimize_coupling(const SystemParams &p, const SteadyState &ss) {
    const double G = p.g1 * ss.x_s;
    if (G == 0.0)
        throw DivisionByZero("optimize_coupling requires g1 x_s != 0");

    // Golden-section minimization of the bracket over u.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.2, hi = 10.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = dc_shot_bracket(c), fd = dc_shot_bracket(d);
    while (hi - lo > 1e-6) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = dc_shot_bracket(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = dc_shot_bracket(d);
        }
    }

    SensitivityOptimum opt;
    opt.u_star = 0.5 * (lo + hi);
    opt.S_min = dc_shot_bracket(opt.u_star);
    opt.g2_star = std::sqrt(opt.u_star * p.kappa() * G);
    // Stationarity of the bracket: (3/2) u^4 - u^2 - 9/2 = 0.
    opt.u_star_analytic = std::sqrt((1.0 + std::sqrt(28.0)) / 3.0);
    return opt;
}

PhysicalSensitivity physical_sensitivity(const PhysicalParams &phys) {
    phys.validate();
    const double u_star = std::sqrt((1.0 + std::sqrt(28.0)) / 3.0);
    PhysicalSensitivity s;
    s.s_min_factor = dc_shot_bracket(u_star);
    s.shot_noise_floor = std::sqrt(s.s_min_factor * constants::hbar * phys.mass *
                                   phys.omega_m_si * phys.omega_m_si);
    s.thermal_floor =
        std::sqrt(2.0 * phys.mass * phys.gamma_m_si * constants::k_B * phys.temperature);
    return s;
}

} // namespace critom
