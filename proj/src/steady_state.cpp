#include "critom/steady_state.hpp"

#include "critom/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace critom {

using complexd = std::complex<double>;

const char *to_string(Stability s) {
    switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::ParametricUnstable: return "parametric_unstable";
    default: return "unknown";
    }
}

double CubicCoeffs::discriminant() const {
    // Scale out the coefficient magnitude; the discriminant is homogeneous of
    // degree 4 so a positive scale factor preserves the sign.
    const double m = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
    if (m == 0.0)
        return 0.0;
    const double a = c3 / m, b = c2 / m, c = c1 / m, d = c0 / m;
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
           27.0 * a * a * d * d;
}

namespace {

// Quadratic-in-x expansion of |(i Delta + kappa)(i Delta_eff + kappa_b/2) + g2^2|^2.
struct DenomQuadratic {
    double a2, a1, a0;
    double eval(double x) const { return (a2 * x + a1) * x + a0; }
    double deriv(double x) const { return 2.0 * a2 * x + a1; }
};

DenomQuadratic denom_quadratic(const SystemParams &p) {
    const double kap = p.kappa();
    const double c0 = p.Delta + p.delta;
    const double G = p.g2 * p.g2 + kap * p.kappa_b / 2.0;
    const double B = p.Delta * p.kappa_b / 2.0;
    const double r2 = p.Delta * p.Delta + kap * kap;
    const double cross = B * kap - G * p.Delta;
    DenomQuadratic q;
    q.a2 = r2 * p.g1 * p.g1;
    q.a1 = -2.0 * p.g1 * (r2 * c0 + cross);
    q.a0 = r2 * c0 * c0 + 2.0 * cross * c0 + G * G + B * B;
    return q;
}

double drive_strength(const SystemParams &p) {
    // K = g1 g2^2 kappa_ex I_in, the right-hand side of the position cubic.
    return p.g1 * p.g2 * p.g2 * p.kappa_ex * p.I_in;
}

// Real eigenvalues of the monic cubic's companion matrix. Near a saddle-node
// tangency the merging pair appears as a near-conjugate complex pair, so an
// eigenvalue counts as real when |Im| < 1e-8 (1 + |Re|).
std::vector<double> companion_real_roots(double p2, double p1, double p0) {
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    C(0, 2) = -p0;
    C(1, 2) = -p1;
    C(2, 2) = -p2;
    Eigen::EigenSolver<Eigen::Matrix3d> es(C);
    if (es.info() != Eigen::Success)
        throw EigenFailure("companion matrix eigensolve");
    std::vector<double> roots;
    for (int i = 0; i < 3; ++i) {
        const complexd lam = es.eigenvalues()(i);
        if (std::abs(lam.imag()) < 1e-8 * (1.0 + std::abs(lam.real())))
            roots.push_back(lam.real());
    }
    return roots;
}

} // namespace

double steady_denominator_sq(const SystemParams &p, double x) {
    const double kap = p.kappa();
    const double u = p.Delta + p.delta - p.g1 * x;
    const double G = p.g2 * p.g2 + kap * p.kappa_b / 2.0;
    const double B = p.Delta * p.kappa_b / 2.0;
    const double re = G - p.Delta * u;
    const double im = B + kap * u;
    return re * re + im * im;
}

CubicCoeffs steady_cubic(const SystemParams &p, double force) {
    const DenomQuadratic q = denom_quadratic(p);
    CubicCoeffs c;
    c.c3 = p.omega_m * q.a2;
    c.c2 = p.omega_m * q.a1 - force * q.a2;
    c.c1 = p.omega_m * q.a0 - force * q.a1;
    c.c0 = -force * q.a0 - drive_strength(p);
    return c;
}

void optical_amplitudes(const SystemParams &p, double x, complexd &a_s, complexd &b_s) {
    const double kap = p.kappa();
    const double u = p.Delta + p.delta - p.g1 * x;
    const complexd pole_a(kap, p.Delta);
    const complexd pole_b(p.kappa_b / 2.0, u);
    const complexd det = pole_a * pole_b + p.g2 * p.g2;
    const double drive = std::sqrt(p.kappa_ex * p.I_in);
    if (drive == 0.0) {
        a_s = b_s = 0.0;
        return;
    }
    if (std::abs(det) == 0.0)
        throw NonConvergence("optical response pole at requested position");
    a_s = drive * pole_b / det;
    b_s = complexd(0.0, -p.g2) * drive / det;
}

SteadyResiduals steady_residuals(const SystemParams &p, const SteadyState &ss, double force) {
    const double kap = p.kappa();
    SteadyResiduals r;
    r.position = ss.x_s - (p.g1 * std::norm(ss.b_s) + force) / p.omega_m;
    const complexd drive = std::sqrt(p.kappa_ex * p.I_in);
    r.mode_a = std::abs(complexd(kap, p.Delta) * ss.a_s + complexd(0.0, p.g2) * ss.b_s - drive);
    r.mode_b = std::abs(complexd(p.kappa_b / 2.0, ss.delta_eff) * ss.b_s +
                        complexd(0.0, p.g2) * ss.a_s);
    return r;
}

std::vector<SteadyState> steady_state_roots(const SystemParams &p, double force) {
    p.validate();
    if (!std::isfinite(force))
        throw InvalidParams("force must be finite");

    const DenomQuadratic q = denom_quadratic(p);
    const double K = drive_strength(p);
    const CubicCoeffs cubic = steady_cubic(p, force);

    // Fixed-point map residual h(x) = x - (K/denom(x) + f)/omega_m and its derivative.
    const auto h = [&](double x) {
        const double rhs = (K == 0.0) ? 0.0 : K / q.eval(x);
        return x - (rhs + force) / p.omega_m;
    };
    const auto h_prime = [&](double x) {
        if (K == 0.0)
            return 1.0;
        const double n = q.eval(x);
        return 1.0 + K * q.deriv(x) / (p.omega_m * n * n);
    };

    std::vector<double> seeds;
    if (cubic.c3 != 0.0) {
        seeds = companion_real_roots(cubic.c2 / cubic.c3, cubic.c1 / cubic.c3, cubic.c0 / cubic.c3);
        if (seeds.empty())
            throw NonConvergence("companion matrix produced no real root");
    } else {
        // g1 = 0 (or kappa = Delta = 0): the cubic collapses to a linear equation.
        if (cubic.c1 == 0.0)
            throw NonConvergence("degenerate steady-state equation (no damping, no detuning)");
        seeds.push_back(-cubic.c0 / cubic.c1);
    }

    constexpr int max_iters = 100;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> roots;
    for (double x : seeds) {
        double r = h(x);
        const auto tol = [&](double v) { return std::max(1e-13, 4.0 * eps * (1.0 + std::abs(v))); };
        int it = 0;
        // Always take at least one Newton step: companion eigenvalues carry
        // O(eps) noise even for exact roots like x = 0.
        while ((it == 0 || std::abs(r) > tol(x)) && it < max_iters) {
            ++it;
            const double d = h_prime(x);
            if (d == 0.0)
                break;
            double step = -r / d;
            // Damp until the residual actually shrinks.
            double xn = x + step, rn = h(xn);
            int halvings = 0;
            while (std::abs(rn) > std::abs(r) && halvings++ < 40) {
                step *= 0.5;
                xn = x + step;
                rn = h(xn);
            }
            if (std::abs(rn) >= std::abs(r))
                break; // stalled (tangency); the companion seed is already close
            x = xn;
            r = rn;
        }
        if (std::abs(r) > 1e-10 * std::max(1.0, std::abs(x)))
            throw NonConvergence("root polish residual " + std::to_string(std::abs(r)));
        roots.push_back(x);
    }

    std::sort(roots.begin(), roots.end());
    // Roots closer than the tangency tolerance are one double root.
    std::vector<double> unique_roots;
    for (double x : roots) {
        if (unique_roots.empty() || x - unique_roots.back() > 1e-8 * (1.0 + std::abs(x)))
            unique_roots.push_back(x);
    }

    std::vector<SteadyState> result;
    result.reserve(unique_roots.size());
    for (double x : unique_roots) {
        SteadyState ss;
        ss.x_s = x;
        ss.delta_eff = p.Delta + p.delta - p.g1 * x;
        optical_amplitudes(p, x, ss.a_s, ss.b_s);
        const double lorentzian = ss.delta_eff * ss.delta_eff + p.kappa_b * p.kappa_b / 4.0;
        ss.lorentzian_singular = lorentzian < 1e-30;
        result.push_back(ss);
    }
    return result;
}

double low_drive_position(const SystemParams &p) {
    if (p.g2 == 0.0)
        throw DivisionByZero("low_drive_position requires g2 > 0");
    return p.g1 * p.kappa_ex * p.I_in / (p.omega_m * p.g2 * p.g2);
}

ForceShift force_shifted_position(const SystemParams &p, double force) {
    ForceShift fs;
    fs.x_s = force / p.omega_m + low_drive_position(p);
    fs.regime_warning = p.kappa_ex * p.g1 * fs.x_s > 0.1 * p.g2 * p.g2;
    return fs;
}

} // namespace critom
