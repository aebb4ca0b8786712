#include "critom/dynamics.hpp"

#include "critom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace critom {

State6 equations_of_motion(const SystemParams &p, const State6 &y, double force) {
    const double kap = p.kappa();
    const double x = y[0], mom = y[1], Xa = y[2], Ya = y[3], Xb = y[4], Yb = y[5];
    const double deff = p.Delta + p.delta - p.g1 * x; // instantaneous mode-b detuning
    const double drive = std::sqrt(2.0 * p.kappa_ex * p.I_in);

    State6 d;
    d[0] = p.omega_m * mom;
    d[1] = -p.gamma_m * mom - p.omega_m * x + p.g1 * 0.5 * (Xb * Xb + Yb * Yb) + force;
    d[2] = -kap * Xa + p.Delta * Ya + p.g2 * Yb + drive;
    d[3] = -p.Delta * Xa - kap * Ya - p.g2 * Xb;
    d[4] = -0.5 * p.kappa_b * Xb + deff * Yb + p.g2 * Ya;
    d[5] = -deff * Xb - 0.5 * p.kappa_b * Yb - p.g2 * Xa;
    return d;
}

State6 steady_state_vector(const SteadyState &ss) {
    const double s = std::sqrt(2.0);
    return {ss.x_s, 0.0, s * ss.a_s.real(), s * ss.a_s.imag(), s * ss.b_s.real(),
            s * ss.b_s.imag()};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0, e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                 e4 = 125.0 / 192.0 - 393.0 / 640.0, e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                 e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

State6 axpy(const State6 &y, double h, const State6 &k) {
    State6 r;
    for (int i = 0; i < 6; ++i)
        r[i] = y[i] + h * k[i];
    return r;
}

} // namespace

Trajectory integrate(const SystemParams &p, const State6 &initial_state, double t_end,
                     const IntegratorOptions &opts) {
    p.validate();
    if (t_end <= 0.0)
        throw InvalidParams("t_end must be > 0");
    if (opts.rel_tol <= 0.0 || opts.abs_tol <= 0.0)
        throw InvalidParams("tolerances must be > 0");

    Trajectory traj;
    traj.params = p;
    traj.times.push_back(0.0);
    traj.states.push_back(initial_state);

    const auto rhs = [&](const State6 &y) { return equations_of_motion(p, y, opts.force); };

    double t = 0.0;
    double h = std::min(opts.initial_step, t_end);
    State6 y = initial_state;
    State6 k1 = rhs(y); // FSAL

    while (t_end - t > 1e-12 * std::max(1.0, t_end)) {
        h = std::min(h, t_end - t);
        if (h < 1e-12)
            throw StepUnderflow("at t = " + std::to_string(t));

        const State6 k2 = rhs(axpy(y, h * a21, k1));
        State6 tmp;
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const State6 k3 = rhs(tmp);
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State6 k4 = rhs(tmp);
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const State6 k5 = rhs(tmp);
        for (int i = 0; i < 6; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const State6 k6 = rhs(tmp);
        State6 y5;
        for (int i = 0; i < 6; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const State6 k7 = rhs(y5);

        double err = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 6.0);

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::min(h, opts.max_step);
    }
    return traj;
}

namespace {

struct Peak {
    double t;
    double x;
};

// Vertex of the parabola through three samples around a discrete maximum.
Peak refine_peak(double t0, double x0, double t1, double x1, double t2, double x2) {
    const double dt1 = t1 - t0, dt2 = t2 - t1;
    // Fit x(t) = x1 + b*(t-t1) + c*(t-t1)^2 through the three points.
    const double s1 = (x1 - x0) / dt1, s2 = (x2 - x1) / dt2;
    const double c = (s2 - s1) / (dt1 + dt2);
    const double b = (s1 * dt2 + s2 * dt1) / (dt1 + dt2);
    if (c >= 0.0)
        return {t1, x1};
    const double dt = -b / (2.0 * c);
    return {t1 + dt, x1 + b * dt + c * dt * dt};
}

} // namespace

LimitCycle detect_limit_cycle(const Trajectory &traj, double transient_fraction) {
    if (traj.times.size() < 8)
        throw NoOscillation("trajectory too short");
    if (transient_fraction < 0.0 || transient_fraction >= 1.0)
        throw InvalidParams("transient_fraction must lie in [0, 1)");

    const double t_start = traj.times.front() +
                           transient_fraction * (traj.times.back() - traj.times.front());
    std::size_t begin = 0;
    while (begin < traj.times.size() && traj.times[begin] < t_start)
        ++begin;
    if (begin == 0)
        begin = 1;

    std::vector<Peak> peaks;
    double x_min = traj.states[begin][0], x_max = x_min;
    for (std::size_t i = begin; i + 1 < traj.times.size(); ++i) {
        const double xm = traj.states[i - 1][0], x0 = traj.states[i][0], xp = traj.states[i + 1][0];
        x_min = std::min(x_min, x0);
        x_max = std::max(x_max, x0);
        if (x0 >= xm && x0 > xp)
            peaks.push_back(refine_peak(traj.times[i - 1], xm, traj.times[i], x0,
                                        traj.times[i + 1], xp));
    }

    // A trajectory settling onto a fixed point produces no usable maxima.
    const double span = x_max - x_min;
    if (span < 1e-12 * (1.0 + std::abs(x_max)))
        throw NoOscillation("x is constant after the transient");
    if (peaks.size() < 3)
        throw NoOscillation("fewer than 3 maxima after the transient");

    LimitCycle lc;
    lc.n_periods = static_cast<int>(peaks.size()) - 1;
    std::vector<double> periods;
    periods.reserve(peaks.size() - 1);
    for (std::size_t i = 1; i < peaks.size(); ++i)
        periods.push_back(peaks[i].t - peaks[i - 1].t);
    lc.period = std::accumulate(periods.begin(), periods.end(), 0.0) /
                static_cast<double>(periods.size());

    // Peak-to-peak amplitude per period, from the minima between successive maxima.
    std::vector<double> amplitudes;
    std::size_t idx = begin;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        double lo = peaks[i - 1].x;
        while (idx + 1 < traj.times.size() && traj.times[idx] < peaks[i].t) {
            if (traj.times[idx] > peaks[i - 1].t)
                lo = std::min(lo, traj.states[idx][0]);
            ++idx;
        }
        amplitudes.push_back(0.5 * (peaks[i - 1].x + peaks[i].x) - lo);
    }
    lc.amplitude_x = amplitudes.empty() ? span
                                        : std::accumulate(amplitudes.begin(), amplitudes.end(), 0.0) /
                                              static_cast<double>(amplitudes.size());

    // Convergence: successive periods and successive per-period amplitudes
    // both drift by less than 1e-3 relative.
    bool converged = true;
    for (std::size_t i = 1; i < periods.size(); ++i) {
        if (std::abs(periods[i] - periods[i - 1]) > 1e-3 * std::abs(periods[i - 1]))
            converged = false;
    }
    for (std::size_t i = 1; i < amplitudes.size(); ++i) {
        if (std::abs(amplitudes[i] - amplitudes[i - 1]) > 1e-3 * std::abs(amplitudes[i - 1]))
            converged = false;
    }
    lc.converged = converged && !amplitudes.empty();
    return lc;
}

} // namespace critom
