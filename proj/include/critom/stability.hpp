#pragma once

#include "critom/params.hpp"
#include "critom/steady_state.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace critom {

// Linearization of the six real state variables [x, p, X_a, Y_a, X_b, Y_b]
// around a steady state.
struct JacobianMatrix {
    Eigen::Matrix<double, 6, 6> entries;
    double X_bs = 0.0; // sqrt(2) Re b_s
    double Y_bs = 0.0; // sqrt(2) Im b_s
};

struct StabilityReport {
    Stability kind = Stability::Unknown;
    std::complex<double> leading_eigenvalue{0.0, 0.0};
    double margin = 0.0; // max real part over the spectrum
};

JacobianMatrix build_jacobian(const SystemParams &p, const SteadyState &ss);

// Eigenvalue classification. Stable when margin < -eps_stab; a complex leading
// pair (|Im| > eps_stab) that is not stable is parametric unstable.
StabilityReport classify_eigen(const JacobianMatrix &J, double eps_stab = 1e-9);

// Convenience: classify a steady state directly.
StabilityReport classify_steady_state(const SystemParams &p, const SteadyState &ss,
                                      double eps_stab = 1e-9);

// Characteristic polynomial coefficients [1, c1, ..., c6] of a 6x6 matrix via
// the Faddeev-LeVerrier recursion (no eigensolve).
std::array<double, 7> characteristic_polynomial(const Eigen::Matrix<double, 6, 6> &m);

// Routh-Hurwitz verdict from the Hurwitz determinants of the characteristic
// coefficients. marginal is set when any determinant is within tolerance of
// zero at its own scale.
struct RouthHurwitzResult {
    bool stable = false;
    bool marginal = false;
};
RouthHurwitzResult classify_routh_hurwitz(const JacobianMatrix &J, double tol = 1e-12);

} // namespace critom
