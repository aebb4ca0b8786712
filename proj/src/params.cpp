#include "critom/params.hpp"

#include "critom/errors.hpp"

#include <cmath>

namespace critom {

namespace {
bool finite(double v) { return std::isfinite(v); }
} // namespace

void SystemParams::validate() const {
    const struct {
        const char *name;
        double value;
    } rates[] = {
        {"kappa_a", kappa_a}, {"kappa_b", kappa_b},   {"kappa_ex", kappa_ex},
        {"g2", g2},           {"omega_m", omega_m},   {"gamma_m", gamma_m},
        {"I_in", I_in},
    };
    for (const auto &r : rates) {
        if (!finite(r.value) || r.value < 0.0)
            throw InvalidParams(std::string(r.name) + " must be finite and >= 0");
    }
    if (!finite(delta) || !finite(Delta) || !finite(g1))
        throw InvalidParams("delta, Delta, g1 must be finite");
    if (omega_m <= 0.0)
        throw InvalidParams("omega_m must be > 0");
}

SystemParams SystemParams::normalized() const {
    validate();
    SystemParams n = *this;
    const double w = omega_m;
    n.kappa_a /= w;
    n.kappa_b /= w;
    n.kappa_ex /= w;
    n.delta /= w;
    n.Delta /= w;
    n.gamma_m /= w;
    // g1 couples a rate to the dimensionless position, so it scales like a rate.
    n.g1 /= w;
    n.g2 /= w;
    n.I_in /= w; // photon flux per unit normalized time
    n.omega_m = 1.0;
    return n;
}

void PhysicalParams::validate() const {
    const struct {
        const char *name;
        double value;
    } strictly_positive[] = {
        {"omega_m_si", omega_m_si},   {"mass", mass},
        {"gamma_m_si", gamma_m_si},   {"g2_si", g2_si},
        {"kappa_a_si", kappa_a_si},   {"kappa_b_si", kappa_b_si},
        {"kappa_ex_si", kappa_ex_si}, {"laser_omega_si", laser_omega_si},
    };
    for (const auto &r : strictly_positive) {
        if (!finite(r.value) || r.value <= 0.0)
            throw InvalidParams(std::string(r.name) + " must be finite and > 0");
    }
    if (!finite(g1_si))
        throw InvalidParams("g1_si must be finite");
    if (!finite(input_power) || input_power < 0.0)
        throw InvalidParams("input_power must be >= 0");
    if (!finite(temperature) || temperature < 0.0)
        throw InvalidParams("temperature must be >= 0");
}

double PhysicalParams::x_scale() const {
    return std::sqrt(constants::hbar / (mass * omega_m_si));
}

SystemParams PhysicalParams::to_normalized() const {
    validate();
    SystemParams n;
    const double w = omega_m_si;
    n.kappa_a = kappa_a_si / w;
    n.kappa_b = kappa_b_si / w;
    n.kappa_ex = kappa_ex_si / w;
    n.delta = 0.0; // resonant operation; override per run if needed
    n.Delta = 0.0;
    n.g1 = g1_si * x_scale() / w;
    n.g2 = g2_si / w;
    n.omega_m = 1.0;
    n.gamma_m = gamma_m_si / w;
    // Photon flux P/(hbar omega_L), measured per unit normalized time 1/omega_m.
    n.I_in = input_power / (constants::hbar * laser_omega_si) / w;
    return n;
}

} // namespace critom
