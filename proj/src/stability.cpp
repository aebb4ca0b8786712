#include "critom/stability.hpp"

#include "critom/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace critom {

JacobianMatrix build_jacobian(const SystemParams &p, const SteadyState &ss) {
    const double kap = p.kappa();
    const double deff = ss.delta_eff;
    const double sqrt2 = std::sqrt(2.0);

    JacobianMatrix J;
    J.X_bs = sqrt2 * ss.b_s.real();
    J.Y_bs = sqrt2 * ss.b_s.imag();

    auto &m = J.entries;
    m.setZero();
    // mechanics
    m(0, 1) = p.omega_m;
    m(1, 0) = -p.omega_m;
    m(1, 1) = -p.gamma_m;
    m(1, 4) = p.g1 * J.X_bs;
    m(1, 5) = p.g1 * J.Y_bs;
    // mode a quadratures
    m(2, 2) = -kap;
    m(2, 3) = p.Delta;
    m(2, 5) = p.g2;
    m(3, 2) = -p.Delta;
    m(3, 3) = -kap;
    m(3, 4) = -p.g2;
    // mode b quadratures (Delta_eff evaluated at x_s)
    m(4, 0) = -p.g1 * J.Y_bs;
    m(4, 3) = p.g2;
    m(4, 4) = -p.kappa_b / 2.0;
    m(4, 5) = deff;
    m(5, 0) = p.g1 * J.X_bs;
    m(5, 2) = -p.g2;
    m(5, 4) = -deff;
    m(5, 5) = -p.kappa_b / 2.0;
    return J;
}

StabilityReport classify_eigen(const JacobianMatrix &J, double eps_stab) {
    if (eps_stab <= 0.0)
        throw InvalidParams("eps_stab must be > 0");
    Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(J.entries);
    if (es.info() != Eigen::Success)
        throw EigenFailure("Jacobian eigensolve");

    StabilityReport rep;
    rep.margin = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        const std::complex<double> lam = es.eigenvalues()(i);
        if (lam.real() > rep.margin) {
            rep.margin = lam.real();
            rep.leading_eigenvalue = lam;
        }
    }
    if (rep.margin < -eps_stab)
        rep.kind = Stability::Stable;
    else if (std::abs(rep.leading_eigenvalue.imag()) > eps_stab)
        rep.kind = Stability::ParametricUnstable;
    else
        rep.kind = Stability::Unstable;
    return rep;
}

StabilityReport classify_steady_state(const SystemParams &p, const SteadyState &ss,
                                      double eps_stab) {
    return classify_eigen(build_jacobian(p, ss), eps_stab);
}

std::array<double, 7> characteristic_polynomial(const Eigen::Matrix<double, 6, 6> &m) {
    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A (M_k + c_k I).
    std::array<double, 7> c{};
    c[0] = 1.0;
    Eigen::Matrix<double, 6, 6> M = m;
    for (int k = 1; k <= 6; ++k) {
        c[k] = -M.trace() / static_cast<double>(k);
        if (k < 6)
            M = m * (M + c[k] * Eigen::Matrix<double, 6, 6>::Identity());
    }
    return c;
}

RouthHurwitzResult classify_routh_hurwitz(const JacobianMatrix &J, double tol) {
    const auto a = characteristic_polynomial(J.entries);

    // Hurwitz matrix H(i,j) = a_{2(j+1)-(i+1)}, zero outside [0,6].
    Eigen::Matrix<double, 6, 6> H = Eigen::Matrix<double, 6, 6>::Zero();
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            const int idx = 2 * (j + 1) - (i + 1);
            if (idx >= 0 && idx <= 6)
                H(i, j) = a[static_cast<std::size_t>(idx)];
        }
    }

    RouthHurwitzResult res;
    res.stable = true;
    for (int k = 1; k <= 6; ++k) {
        const Eigen::MatrixXd block = H.topLeftCorner(k, k);
        const double det = block.determinant();
        // Hadamard bound of the block sets the scale for "within tol of zero".
        double scale = 1.0;
        for (int i = 0; i < k; ++i)
            scale *= std::max(block.row(i).norm(), 1.0);
        if (std::abs(det) <= tol * scale)
            res.marginal = true;
        if (det <= 0.0)
            res.stable = false;
    }
    return res;
}

} // namespace critom
