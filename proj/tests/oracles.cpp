#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace critom::oracles {

namespace {

double fixed_point_residual(const SystemParams &p, double x, double force) {
    const double kap = p.kappa();
    const std::complex<double> pole_a(kap, p.Delta);
    const std::complex<double> pole_b(p.kappa_b / 2.0, p.Delta + p.delta - p.g1 * x);
    const std::complex<double> det = pole_a * pole_b + p.g2 * p.g2;
    const double asq = p.kappa_ex * p.I_in * std::norm(pole_b) / std::norm(det);
    const double deff = p.Delta + p.delta - p.g1 * x;
    const double lorentzian = deff * deff + p.kappa_b * p.kappa_b / 4.0;
    const double rhs = p.g1 * p.g2 * p.g2 * asq / lorentzian;
    return (rhs + force) / p.omega_m - x;
}

} // namespace

namespace {

double bisect_to_root(const SystemParams &p, double force, double a, double b, double ra) {
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double rm = fixed_point_residual(p, m, force);
        if (rm == 0.0)
            return m;
        if ((rm > 0.0) == (ra > 0.0)) {
            a = m;
            ra = rm;
        } else {
            b = m;
        }
        if (b - a < 1e-15 * (1.0 + std::abs(a)))
            break;
    }
    return 0.5 * (a + b);
}

} // namespace

std::vector<double> dense_scan_roots(const SystemParams &p, double force, int grid_points) {
    // Fujiwara-style root bound of the cubic keeps the scan window tight.
    const auto c = steady_cubic(p, force);
    double hi = 1.0, lo = -1.0;
    if (c.c3 != 0.0) {
        const double bound = 2.0 * std::max({std::abs(c.c2 / c.c3),
                                             std::sqrt(std::abs(c.c1 / c.c3)),
                                             std::cbrt(std::abs(c.c0 / c.c3))});
        hi = std::min(bound + 1.0, 1e9);
        lo = -hi;
    } else if (c.c1 != 0.0) {
        const double r = -c.c0 / c.c1;
        hi = std::abs(r) + 1.0;
        lo = -hi;
    }

    // Sample the residual; augment the sample set with the residual's refined
    // critical points so every monotone segment gets an endpoint, which keeps
    // near-tangent root pairs from slipping between grid nodes.
    std::vector<double> xs(static_cast<std::size_t>(grid_points) + 1);
    std::vector<double> rs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / grid_points;
        rs[i] = fixed_point_residual(p, xs[i], force);
    }

    const double h_fd = (hi - lo) / (8.0 * grid_points);
    const auto slope = [&](double x) {
        return (fixed_point_residual(p, x + h_fd, force) -
                fixed_point_residual(p, x - h_fd, force)) /
               (2.0 * h_fd);
    };
    std::vector<double> extra;
    double s_prev = slope(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double s = slope(xs[i]);
        if ((s_prev > 0.0) != (s > 0.0)) {
            double a = xs[i - 1], b = xs[i], sa = s_prev;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const double sm = slope(m);
                if ((sm > 0.0) == (sa > 0.0)) {
                    a = m;
                    sa = sm;
                } else {
                    b = m;
                }
            }
            extra.push_back(0.5 * (a + b));
        }
        s_prev = s;
    }
    for (double x : extra) {
        xs.push_back(x);
        rs.push_back(fixed_point_residual(p, x, force));
    }
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    std::vector<double> roots;
    for (std::size_t k = 1; k < order.size(); ++k) {
        const double xa = xs[order[k - 1]], xb = xs[order[k]];
        const double ra = rs[order[k - 1]], rb = rs[order[k]];
        if (ra == 0.0) {
            if (roots.empty() || xa - roots.back() > 1e-12 * (1.0 + std::abs(xa)))
                roots.push_back(xa);
            continue;
        }
        if ((ra > 0.0) != (rb > 0.0)) {
            const double r = bisect_to_root(p, force, xa, xb, ra);
            if (roots.empty() || r - roots.back() > 1e-10 * (1.0 + std::abs(r)))
                roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

TransferOracle solve_linear_response(const SystemParams &p, const SteadyState &ss, double omega) {
    using cd = std::complex<double>;
    const double kap = p.kappa();
    const double wm = p.omega_m;
    const double G = p.g1 * ss.x_s;
    const double beta = std::sqrt(2.0) * p.g1 * std::abs(ss.b_s);
    const cd kc(kap, -omega);
    const cd kb2(p.kappa_b / 2.0, -omega);
    const cd chi_m = 1.0 / cd(wm * wm - omega * omega, -p.gamma_m * omega);

    // Unknowns v = (x, X_a, Y_a, X_b, Y_b); equations as in the linearized
    // resonant-operation system.
    Eigen::Matrix<cd, 5, 5> M = Eigen::Matrix<cd, 5, 5>::Zero();
    M(0, 0) = 1.0;
    M(0, 3) = -chi_m * beta;
    M(1, 1) = kc;
    M(1, 4) = -p.g2;
    M(2, 2) = kc;
    M(2, 3) = p.g2;
    M(3, 2) = -p.g2;
    M(3, 3) = kb2;
    M(3, 4) = G;
    M(4, 0) = -beta;
    M(4, 1) = p.g2;
    M(4, 3) = -G;
    M(4, 4) = kb2;
    const auto lu = M.fullPivLu();

    const double rt_ex = std::sqrt(p.kappa_ex);
    const double rt_a = std::sqrt(p.kappa_a);
    const double rt_b = std::sqrt(p.kappa_b);

    // Y_out for one unit-amplitude input channel; passthrough covers the
    // direct Y_d term of the input-output relation.
    const auto response = [&](int row, cd rhs_value, cd passthrough) {
        Eigen::Matrix<cd, 5, 1> rhs = Eigen::Matrix<cd, 5, 1>::Zero();
        rhs(row) = rhs_value;
        const Eigen::Matrix<cd, 5, 1> v = lu.solve(rhs);
        return passthrough - rt_ex * v(2);
    };

    // Convert an output response into the appendix's bracket coefficient.
    const cd A = kb2 * kc + p.g2 * p.g2;
    const cd chi_b_inv = A * A + G * G * kc * kc * (1.0 + 2.0 * wm * wm * chi_m);
    const cd to_coeff = kc * chi_b_inv / (p.g2 * rt_ex);

    TransferOracle t;
    t.chi_F = response(0, chi_m, 0.0) * to_coeff;
    t.chi_Xd = response(1, rt_ex, 0.0) * to_coeff;
    t.chi_Yd = response(2, rt_ex, 1.0) * to_coeff;
    t.chi_Xac = response(1, rt_a, 0.0) * to_coeff;
    t.chi_Yac = response(2, rt_a, 0.0) * to_coeff;
    t.chi_Xbc = response(3, rt_b, 0.0) * to_coeff;
    t.chi_Ybc = response(4, rt_b, 0.0) * to_coeff;
    return t;
}

SystemParams random_params(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto log_uniform = [&](double lo, double hi) {
        return lo * std::pow(hi / lo, uni(rng));
    };
    SystemParams p;
    p.omega_m = 1.0;
    p.kappa_a = log_uniform(0.05, 4.0);
    p.kappa_ex = log_uniform(0.05, 4.0);
    p.kappa_b = log_uniform(0.01, 4.0);
    p.delta = -10.0 + 20.0 * uni(rng);
    p.Delta = -8.0 + 16.0 * uni(rng);
    p.g1 = log_uniform(1e-3, 0.05);
    p.g2 = log_uniform(0.05, 4.0);
    p.gamma_m = log_uniform(1e-3, 0.3);
    p.I_in = log_uniform(1e-2, 1e5);
    return p;
}

} // namespace critom::oracles
