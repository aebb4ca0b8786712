#include "critom/bifurcation.hpp"

#include "critom/errors.hpp"
#include "critom/parallel.hpp"
#include "critom/response.hpp"
#include "critom/stability.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace critom {

const char *to_string(Region r) {
    switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    }
    return "?";
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

RegionCell classify_point(const SystemParams &base, double Delta, double iin) {
    SystemParams p = base;
    p.Delta = Delta;
    p.I_in = iin;
    RegionCell cell;
    try {
        const auto roots = steady_state_roots(p);
        cell.root_count = static_cast<int>(roots.size());
        bool parametric = false;
        for (const auto &ss : roots)
            if (classify_steady_state(p, ss).kind == Stability::ParametricUnstable)
                parametric = true;
        if (cell.root_count >= 2)
            cell.region = Region::II;
        else if (parametric)
            cell.region = Region::III;
        else
            cell.region = Region::I;
    } catch (const Error &) {
        cell.solver_failed = true;
    }
    return cell;
}

} // namespace

RegionMap scan_plane(const SystemParams &base, double delta_min, double delta_max, double iin_min,
                     double iin_max, int n_delta, int n_iin, int threads) {
    base.validate();
    if (n_delta < 2 || n_iin < 2)
        throw InvalidParams("plane resolution must be at least 2 per axis");
    if (!(delta_max > delta_min) || !(iin_max >= iin_min))
        throw InvalidParams("empty scan ranges");

    RegionMap map;
    map.delta_grid = linspace(delta_min, delta_max, n_delta);
    map.iin_grid = linspace(iin_min, iin_max, n_iin);
    map.cells.resize(static_cast<std::size_t>(n_delta) * static_cast<std::size_t>(n_iin));

    parallel_for(map.cells.size(), threads, [&](std::size_t k) {
        const std::size_t i = k % map.delta_grid.size();
        const std::size_t j = k / map.delta_grid.size();
        map.cells[k] = classify_point(base, map.delta_grid[i], map.iin_grid[j]);
    });
    return map;
}

double cubic_discriminant_at(const SystemParams &base, double Delta, double iin) {
    SystemParams p = base;
    p.Delta = Delta;
    p.I_in = iin;
    return steady_cubic(p).discriminant();
}

double hopf_margin_at(const SystemParams &base, double Delta, double iin) {
    SystemParams p = base;
    p.Delta = Delta;
    p.I_in = iin;
    double margin = -std::numeric_limits<double>::infinity();
    try {
        for (const auto &ss : steady_state_roots(p)) {
            Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(build_jacobian(p, ss).entries);
            if (es.info() != Eigen::Success)
                continue;
            for (int i = 0; i < 6; ++i) {
                const auto lam = es.eigenvalues()(i);
                if (std::abs(lam.imag()) > 1e-6)
                    margin = std::max(margin, lam.real());
            }
        }
    } catch (const Error &) {
        // leave -inf; treated as deep inside the stable side
    }
    return margin;
}

namespace {

using MetricFn = std::function<double(double, double)>;

// Bisection of a sign change along the segment a -> b.
BoundaryPoint bisect_edge(const MetricFn &f, BoundaryPoint a, BoundaryPoint b, double fa,
                          double fb) {
    for (int it = 0; it < 90; ++it) {
        const BoundaryPoint mid{0.5 * (a.Delta + b.Delta), 0.5 * (a.I_in + b.I_in)};
        const double fm = f(mid.Delta, mid.I_in);
        if (fm == 0.0)
            return mid;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        if (std::abs(a.Delta - b.Delta) + std::abs(a.I_in - b.I_in) <
            1e-14 * (1.0 + std::abs(a.Delta) + std::abs(a.I_in)))
            break;
    }
    return {0.5 * (a.Delta + b.Delta), 0.5 * (a.I_in + b.I_in)};
}

std::vector<BoundaryPoint> boundary_edge_points(const MetricFn &f, const RegionMap &map,
                                                int threads = 0) {
    const std::size_t nd = map.delta_grid.size(), ni = map.iin_grid.size();
    std::vector<double> vals(nd * ni);
    parallel_for(nd * ni, threads, [&](std::size_t k) {
        vals[k] = f(map.delta_grid[k % nd], map.iin_grid[k / nd]);
    });
    const auto v = [&](std::size_t i, std::size_t j) { return vals[j * nd + i]; };
    const auto negish = [](double x) { return x < 0.0 || std::isinf(x); };

    std::vector<BoundaryPoint> pts;
    for (std::size_t j = 0; j < ni; ++j) {
        for (std::size_t i = 0; i + 1 < nd; ++i) {
            const double fa = v(i, j), fb = v(i + 1, j);
            if (!std::isfinite(fa) && !std::isfinite(fb))
                continue;
            if (negish(fa) == negish(fb))
                continue;
            pts.push_back(bisect_edge(f, {map.delta_grid[i], map.iin_grid[j]},
                                      {map.delta_grid[i + 1], map.iin_grid[j]}, fa, fb));
        }
    }
    for (std::size_t j = 0; j + 1 < ni; ++j) {
        for (std::size_t i = 0; i < nd; ++i) {
            const double fa = v(i, j), fb = v(i, j + 1);
            if (!std::isfinite(fa) && !std::isfinite(fb))
                continue;
            if (negish(fa) == negish(fb))
                continue;
            pts.push_back(bisect_edge(f, {map.delta_grid[i], map.iin_grid[j]},
                                      {map.delta_grid[i], map.iin_grid[j + 1]}, fa, fb));
        }
    }
    return pts;
}

// Nearest-neighbor chaining of unordered boundary points into polylines.
std::vector<std::vector<BoundaryPoint>> chain_points(std::vector<BoundaryPoint> pts,
                                                     const RegionMap &map) {
    const double sd = map.delta_grid.back() - map.delta_grid.front();
    const double si = map.iin_grid.back() - map.iin_grid.front();
    const double cell_d = sd / static_cast<double>(map.delta_grid.size() - 1);
    const double cell_i = si / static_cast<double>(map.iin_grid.size() - 1);
    const auto dist = [&](const BoundaryPoint &a, const BoundaryPoint &b) {
        const double dd = (a.Delta - b.Delta) / cell_d;
        const double di = (a.I_in - b.I_in) / (cell_i > 0.0 ? cell_i : 1.0);
        return std::hypot(dd, di);
    };
    constexpr double max_link = 2.5; // in cell units

    std::vector<std::vector<BoundaryPoint>> curves;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t s = 0; s < pts.size(); ++s) {
        if (used[s])
            continue;
        std::vector<BoundaryPoint> fwd{pts[s]};
        used[s] = true;
        for (int dir = 0; dir < 2; ++dir) {
            while (true) {
                const BoundaryPoint &tail = dir == 0 ? fwd.back() : fwd.front();
                double best = max_link;
                std::size_t best_k = pts.size();
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    if (used[k])
                        continue;
                    const double d = dist(tail, pts[k]);
                    if (d < best) {
                        best = d;
                        best_k = k;
                    }
                }
                if (best_k == pts.size())
                    break;
                used[best_k] = true;
                if (dir == 0)
                    fwd.push_back(pts[best_k]);
                else
                    fwd.insert(fwd.begin(), pts[best_k]);
            }
        }
        curves.push_back(std::move(fwd));
    }
    return curves;
}

std::vector<BoundaryCurve> trace_boundary(const MetricFn &f, const RegionMap &map,
                                          BoundaryKind kind) {
    auto chained = chain_points(boundary_edge_points(f, map), map);
    std::vector<BoundaryCurve> out;
    out.reserve(chained.size());
    for (auto &c : chained) {
        BoundaryCurve bc;
        bc.kind = kind;
        bc.points = std::move(c);
        out.push_back(std::move(bc));
    }
    // Longest curves first: the physically meaningful lobes.
    std::sort(out.begin(), out.end(),
              [](const BoundaryCurve &a, const BoundaryCurve &b) {
                  return a.points.size() > b.points.size();
              });
    return out;
}

BoundaryCurve pick_nearest_curve(std::vector<BoundaryCurve> curves, BoundaryPoint seed,
                                 const RegionMap &map) {
    if (curves.empty())
        throw TraceLost("no boundary crossing in the scan window");
    const double sd = map.delta_grid.back() - map.delta_grid.front();
    const double si = std::max(map.iin_grid.back() - map.iin_grid.front(), 1e-300);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        for (const auto &pt : curves[c].points) {
            const double d =
                std::hypot((pt.Delta - seed.Delta) / sd, (pt.I_in - seed.I_in) / si);
            if (d < best) {
                best = d;
                best_c = c;
            }
        }
    }
    return curves[best_c];
}

} // namespace

std::vector<BoundaryCurve> trace_saddle_node(const SystemParams &base, const RegionMap &map) {
    const MetricFn f = [&](double d, double i) { return cubic_discriminant_at(base, d, i); };
    return trace_boundary(f, map, BoundaryKind::SaddleNode);
}

std::vector<BoundaryCurve> trace_hopf(const SystemParams &base, const RegionMap &map) {
    const MetricFn f = [&](double d, double i) { return hopf_margin_at(base, d, i); };
    return trace_boundary(f, map, BoundaryKind::Hopf);
}

BoundaryCurve trace_saddle_node_from(const SystemParams &base, const RegionMap &map,
                                     BoundaryPoint seed) {
    return pick_nearest_curve(trace_saddle_node(base, map), seed, map);
}

BoundaryCurve trace_hopf_from(const SystemParams &base, const RegionMap &map,
                              BoundaryPoint seed) {
    return pick_nearest_curve(trace_hopf(base, map), seed, map);
}

// ---------------------------------------------------------------------------
// Pseudo-arclength continuation of F(x, Delta) = 0 at fixed I_in.
// ---------------------------------------------------------------------------

namespace {

struct CurvePoint {
    double Delta;
    double x;
};

struct TraceResult {
    std::vector<CurvePoint> pts;
    bool closed = false;
    bool exited = false;
};

class Continuer {
public:
    Continuer(const SystemParams &p, double delta_lo, double delta_hi, double step, double x_scale,
              double f_scale)
        : p_(p), lo_(delta_lo), hi_(delta_hi), margin_(0.02 * (delta_hi - delta_lo)),
          h0_(step), h_min_(std::min(1e-6, step / 100.0)), h_max_(step), sx_(x_scale),
          fref_(f_scale) {}

    // G and its gradient in scaled coordinates (chi = x/sx, Delta).
    double G(double chi, double Delta) const {
        SystemParams q = p_;
        q.Delta = Delta;
        return steady_cubic(q).eval(chi * sx_) / fref_;
    }
    void grad(double chi, double Delta, double &g_chi, double &g_delta) const {
        SystemParams q = p_;
        q.Delta = Delta;
        g_chi = steady_cubic(q).deriv(chi * sx_) * sx_ / fref_;
        const double h = 1e-7 * (1.0 + std::abs(Delta));
        q.Delta = Delta + h;
        const double fp = steady_cubic(q).eval(chi * sx_);
        q.Delta = Delta - h;
        const double fm = steady_cubic(q).eval(chi * sx_);
        g_delta = (fp - fm) / (2.0 * h) / fref_;
    }

    TraceResult trace(double x0, double delta0, int direction) const {
        TraceResult res;
        double chi = x0 / sx_, Delta = delta0;

        // Land exactly on the curve first (1-D Newton in chi).
        if (!polish(chi, Delta))
            throw ContinuationStall("seed polish failed");
        res.pts.push_back({Delta, chi * sx_});

        double t_chi, t_delta;
        tangent(chi, Delta, t_chi, t_delta);
        if ((t_delta != 0.0 ? t_delta : t_chi) * direction < 0.0) {
            t_chi = -t_chi;
            t_delta = -t_delta;
        }

        const double chi0 = chi, delta0s = Delta;
        double h = h0_;
        double arc = 0.0;
        bool moved_away = false;
        constexpr std::size_t max_points = 300000;

        while (res.pts.size() < max_points) {
            // Predict.
            double chi_p = chi + h * t_chi;
            double delta_p = Delta + h * t_delta;
            // Correct: Newton on {G = 0, t.(z - z_pred) = 0}.
            bool ok = false;
            double chi_n = chi_p, delta_n = delta_p;
            for (int it = 0; it < 12; ++it) {
                double gc, gd;
                grad(chi_n, delta_n, gc, gd);
                const double g = G(chi_n, delta_n);
                const double c = t_chi * (chi_n - chi_p) + t_delta * (delta_n - delta_p);
                const double det = gc * t_delta - gd * t_chi;
                if (std::abs(det) < 1e-14)
                    break;
                const double d_chi = (-g * t_delta + gd * c) / det;
                const double d_delta = (-gc * c + g * t_chi) / det;
                chi_n += d_chi;
                delta_n += d_delta;
                if (std::hypot(d_chi, d_delta) < 1e-11 * (1.0 + std::hypot(chi_n, delta_n))) {
                    ok = std::abs(G(chi_n, delta_n)) < 1e-8;
                    break;
                }
            }
            if (!ok) {
                if (h <= h_min_ * 1.0000001)
                    throw ContinuationStall("step floored at Delta = " + std::to_string(Delta));
                h = std::max(h_min_, 0.5 * h);
                continue;
            }

            const double ds = std::hypot(chi_n - chi, delta_n - Delta);
            chi = chi_n;
            Delta = delta_n;
            arc += ds;
            res.pts.push_back({Delta, chi * sx_});

            // Re-orient the tangent along the march.
            double nt_chi, nt_delta;
            tangent(chi, Delta, nt_chi, nt_delta);
            if (nt_chi * t_chi + nt_delta * t_delta < 0.0) {
                nt_chi = -nt_chi;
                nt_delta = -nt_delta;
            }
            t_chi = nt_chi;
            t_delta = nt_delta;

            // Termination: left the window, or returned to the start.
            if (Delta < lo_ - margin_ || Delta > hi_ + margin_) {
                res.exited = true;
                break;
            }
            const double d_start = std::hypot(chi - chi0, Delta - delta0s);
            if (!moved_away && d_start > 10.0 * h0_)
                moved_away = true;
            if (moved_away && arc > 20.0 * h0_ && d_start < std::max(h, 1.5 * h0_)) {
                res.closed = true;
                res.pts.push_back({delta0s, chi0 * sx_});
                break;
            }

            h = std::min(h * 1.3, h_max_);
        }
        if (res.pts.size() >= max_points)
            throw ContinuationStall("point budget exhausted");
        return res;
    }

private:
    void tangent(double chi, double Delta, double &t_chi, double &t_delta) const {
        double gc, gd;
        grad(chi, Delta, gc, gd);
        const double n = std::hypot(gc, gd);
        if (n == 0.0) {
            t_chi = 0.0;
            t_delta = 1.0;
            return;
        }
        t_chi = -gd / n;
        t_delta = gc / n;
    }

    bool polish(double &chi, double Delta) const {
        for (int it = 0; it < 60; ++it) {
            const double g = G(chi, Delta);
            if (std::abs(g) < 1e-11)
                return true;
            double gc, gd;
            grad(chi, Delta, gc, gd);
            if (gc == 0.0)
                return false;
            chi -= g / gc;
        }
        return std::abs(G(chi, Delta)) < 1e-8;
    }

    SystemParams p_;
    double lo_, hi_, margin_;
    double h0_, h_min_, h_max_;
    double sx_, fref_;
};

} // namespace

std::vector<BranchCurve> sweep_branch(const SystemParams &base, double iin_fixed, double delta_min,
                                      double delta_max, double step) {
    base.validate();
    if (step <= 0.0)
        throw InvalidParams("step must be > 0");
    if (!(delta_max > delta_min))
        throw InvalidParams("empty detuning range");

    SystemParams p = base;
    p.I_in = iin_fixed;

    // Dense pre-scan: seeds for the main branch and for isola detection, plus
    // the coordinate scaling of the continuation.
    const double span = delta_max - delta_min;
    const int n_scan = std::clamp(static_cast<int>(std::lround(span / step)) + 1, 9, 20001);
    const auto grid = linspace(delta_min, delta_max, n_scan);

    std::vector<std::vector<double>> scan_roots(grid.size());
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SystemParams q = p;
        q.Delta = grid[i];
        for (const auto &ss : steady_state_roots(q)) {
            scan_roots[i].push_back(ss.x_s);
            x_lo = std::min(x_lo, ss.x_s);
            x_hi = std::max(x_hi, ss.x_s);
        }
    }
    if (!std::isfinite(x_lo))
        throw NonConvergence("no steady states anywhere in the sweep range");

    const double x_range = std::max(x_hi - x_lo, 1e-3 * (1.0 + std::abs(x_hi)));
    const double sx = x_range / span;

    // Normalization for the continuation residual.
    double fref = 0.0;
    const double x_big = std::max(std::abs(x_lo), std::abs(x_hi)) + x_range;
    for (double d : {delta_min, 0.5 * (delta_min + delta_max), delta_max}) {
        SystemParams q = p;
        q.Delta = d;
        const auto c = steady_cubic(q);
        fref = std::max(fref, std::abs(c.c3) * x_big * x_big * x_big +
                                  std::abs(c.c2) * x_big * x_big + std::abs(c.c1) * x_big +
                                  std::abs(c.c0));
    }
    if (fref == 0.0)
        fref = 1.0;

    const Continuer cont(p, delta_min, delta_max, step, sx, fref);

    std::vector<TraceResult> traces;
    const auto covered = [&](double Delta, double x) {
        const double r = 0.9 * step;
        for (const auto &tr : traces) {
            for (const auto &pt : tr.pts) {
                if (std::hypot(pt.Delta - Delta, (pt.x - x) / sx) < r)
                    return true;
            }
        }
        return false;
    };

    // Branches entering through the window edges.
    for (double x : scan_roots.front()) {
        if (!covered(delta_min, x))
            traces.push_back(cont.trace(x, delta_min, +1));
    }
    for (double x : scan_roots.back()) {
        if (!covered(delta_max, x))
            traces.push_back(cont.trace(x, delta_max, -1));
    }
    // Interior seeds: anything the edge branches did not reach (isolas, or
    // branches folding back out the same edge).
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (double x : scan_roots[i]) {
            if (covered(grid[i], x))
                continue;
            TraceResult fwd = cont.trace(x, grid[i], +1);
            if (!fwd.closed) {
                TraceResult bwd = cont.trace(x, grid[i], -1);
                std::reverse(bwd.pts.begin(), bwd.pts.end());
                bwd.pts.pop_back(); // seed duplicated between the two halves
                bwd.pts.insert(bwd.pts.end(), fwd.pts.begin(), fwd.pts.end());
                bwd.closed = false;
                bwd.exited = fwd.exited || bwd.exited;
                traces.push_back(std::move(bwd));
            } else {
                traces.push_back(std::move(fwd));
            }
        }
    }

    std::vector<BranchCurve> out;
    out.reserve(traces.size());
    for (const auto &tr : traces) {
        BranchCurve bc;
        bc.closed = tr.closed;
        bc.label = (tr.closed && !tr.exited) ? BranchLabel::Isola : BranchLabel::Main;
        bc.points.reserve(tr.pts.size());
        for (const auto &cp : tr.pts) {
            SystemParams q = p;
            q.Delta = cp.Delta;
            SteadyState ss;
            ss.x_s = cp.x;
            ss.delta_eff = q.Delta + q.delta - q.g1 * cp.x;
            optical_amplitudes(q, cp.x, ss.a_s, ss.b_s);
            BranchPoint bp;
            bp.Delta = cp.Delta;
            bp.x_s = cp.x;
            bp.T = q.I_in > 0.0 ? transmission_full(q, ss) : 1.0;
            bp.stability = classify_steady_state(q, ss).kind;
            bc.points.push_back(bp);
        }
        out.push_back(std::move(bc));
    }
    return out;
}

std::vector<HysteresisPoint> hysteresis_sweep(const SystemParams &base, double iin_fixed,
                                              double delta_min, double delta_max,
                                              SweepDirection direction, double step,
                                              std::optional<double> start_x) {
    base.validate();
    if (step <= 0.0)
        throw InvalidParams("step must be > 0");
    SystemParams p = base;
    p.I_in = iin_fixed;

    const int n = std::max(2, static_cast<int>(std::lround((delta_max - delta_min) / step)) + 1);
    auto grid = linspace(delta_min, delta_max, n);
    if (direction == SweepDirection::Down)
        std::reverse(grid.begin(), grid.end());

    struct Classified {
        double x;
        Stability kind;
    };
    const auto roots_at = [&](double Delta) {
        SystemParams q = p;
        q.Delta = Delta;
        std::vector<Classified> out;
        for (const auto &ss : steady_state_roots(q))
            out.push_back({ss.x_s, classify_steady_state(q, ss).kind});
        return out;
    };

    std::vector<HysteresisPoint> trace;
    trace.reserve(grid.size());

    auto first = roots_at(grid.front());
    std::size_t pick = 0;
    if (start_x) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < first.size(); ++i) {
            const double d = std::abs(first[i].x - *start_x);
            if (d < best) {
                best = d;
                pick = i;
            }
        }
    } else {
        // Lowest non-saddle root; basin of the resting branch.
        bool found = false;
        for (std::size_t i = 0; i < first.size(); ++i) {
            if (first[i].kind != Stability::Unstable) {
                pick = i;
                found = true;
                break;
            }
        }
        if (!found)
            pick = 0;
    }
    trace.push_back({grid.front(), first[pick].x, first[pick].kind, false});

    double last_move = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const auto roots = roots_at(grid[k]);
        const double x_prev = trace.back().x_s;

        // Basin following: nearest root that is not a saddle. A saddle between
        // two stable roots is never selected; if nothing else exists (deep in
        // region III the lone root is parametric unstable) take the nearest.
        double best = std::numeric_limits<double>::infinity();
        std::size_t sel = roots.size();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (roots[i].kind == Stability::Unstable)
                continue;
            const double d = std::abs(roots[i].x - x_prev);
            if (d < best) {
                best = d;
                sel = i;
            }
        }
        if (sel == roots.size()) {
            for (std::size_t i = 0; i < roots.size(); ++i) {
                const double d = std::abs(roots[i].x - x_prev);
                if (d < best) {
                    best = d;
                    sel = i;
                }
            }
        }

        const double rel_floor = 1e-3 * (1.0 + std::abs(x_prev));
        const bool jumped = k >= 2 && best > 4.0 * last_move + rel_floor;
        trace.push_back({grid[k], roots[sel].x, roots[sel].kind, jumped});
        last_move = jumped ? rel_floor : best;
    }
    return trace;
}

} // namespace critom
