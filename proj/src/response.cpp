#include "critom/response.hpp"

#include "critom/errors.hpp"
#include "critom/stability.hpp"

#include <algorithm>
#include <cmath>

namespace critom {

using complexd = std::complex<double>;

complexd output_field(const SystemParams &p, complexd a_s) {
    return std::sqrt(p.I_in) - std::sqrt(p.kappa_ex) * a_s;
}

double transmission_full(const SystemParams &p, const SteadyState &ss) {
    if (p.I_in <= 0.0)
        throw InvalidParams("transmission requires I_in > 0");
    const complexd t = 1.0 - std::sqrt(p.kappa_ex / p.I_in) * ss.a_s;
    return std::norm(t);
}

double transmission_crit_approx(const SystemParams &p, double x_s) {
    const double kap = p.kappa();
    const double inner = p.Delta - p.g1 * x_s;
    if (inner == 0.0)
        return 1.0; // removable singularity: the window center is transparent
    const double D = p.Delta - p.g2 * p.g2 / inner;
    return D * D / (D * D + kap * kap);
}

double steady_phase_quadrature(const SystemParams &p, double x_s) {
    complexd a_s, b_s;
    optical_amplitudes(p, x_s, a_s, b_s);
    return std::sqrt(2.0) * output_field(p, a_s).imag();
}

std::vector<SpectrumPoint> dispersion_spectrum(const SystemParams &p, double delta_min,
                                               double delta_max, int n_points, double force,
                                               bool force_via_low_drive) {
    if (n_points < 2)
        throw InvalidParams("spectrum needs at least 2 points");
    if (delta_max <= delta_min)
        throw InvalidParams("empty detuning range");

    std::vector<SpectrumPoint> out;
    out.reserve(static_cast<std::size_t>(n_points));
    const double step = (delta_max - delta_min) / (n_points - 1);

    for (int i = 0; i < n_points; ++i) {
        SystemParams q = p;
        q.Delta = delta_min + i * step;

        if (force_via_low_drive && force != 0.0) {
            // Low-drive force path: shift the position, evaluate the optical
            // steady state at the shifted point.
            const double x = force_shifted_position(q, force).x_s;
            SpectrumPoint pt;
            pt.Delta = q.Delta;
            pt.x_s = x;
            SteadyState ss;
            ss.x_s = x;
            ss.delta_eff = q.Delta + q.delta - q.g1 * x;
            optical_amplitudes(q, x, ss.a_s, ss.b_s);
            pt.T = transmission_full(q, ss);
            pt.phase = std::arg(output_field(q, ss.a_s) / std::sqrt(q.I_in));
            pt.branch = 0;
            pt.stability = Stability::Unknown;
            out.push_back(pt);
            continue;
        }

        const auto roots = steady_state_roots(q, force);
        for (std::size_t b = 0; b < roots.size(); ++b) {
            SpectrumPoint pt;
            pt.Delta = q.Delta;
            pt.x_s = roots[b].x_s;
            pt.T = transmission_full(q, roots[b]);
            pt.phase = std::arg(output_field(q, roots[b].a_s) / std::sqrt(q.I_in));
            pt.branch = static_cast<int>(b);
            pt.stability = classify_steady_state(q, roots[b]).kind;
            out.push_back(pt);
        }
    }

    // Unwrap phases along Delta within each branch (pi-jump threshold).
    constexpr double pi = 3.14159265358979323846;
    for (int b = 0;; ++b) {
        SpectrumPoint *prev = nullptr;
        bool seen = false;
        double offset = 0.0;
        for (auto &pt : out) {
            if (pt.branch != b)
                continue;
            seen = true;
            if (prev) {
                double ph = pt.phase + offset;
                while (ph - prev->phase > pi) {
                    ph -= 2.0 * pi;
                    offset -= 2.0 * pi;
                }
                while (ph - prev->phase < -pi) {
                    ph += 2.0 * pi;
                    offset += 2.0 * pi;
                }
                pt.phase = ph;
            }
            prev = &pt;
        }
        if (!seen)
            break;
    }
    return out;
}

double phase_response_slope(const SystemParams &p, double f_step, bool force_via_low_drive) {
    if (f_step <= 0.0)
        throw InvalidParams("f_step must be > 0");

    const double x_ref = force_via_low_drive ? 0.0 : steady_state_roots(p).front().x_s;
    const auto y_of_f = [&](double f) {
        if (force_via_low_drive)
            return steady_phase_quadrature(p, force_shifted_position(p, f).x_s);
        // Full path: re-solve the cubic with the force term, follow the branch
        // nearest the unforced reference root.
        const auto roots = steady_state_roots(p, f);
        const auto it = std::min_element(roots.begin(), roots.end(),
                                         [&](const SteadyState &a, const SteadyState &b) {
                                             return std::abs(a.x_s - x_ref) < std::abs(b.x_s - x_ref);
                                         });
        return steady_phase_quadrature(p, it->x_s);
    };
    return (y_of_f(f_step) - y_of_f(-f_step)) / (2.0 * f_step);
}

} // namespace critom
