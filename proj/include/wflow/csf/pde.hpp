#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "wflow/csf/cylinder.hpp"

namespace wflow::csf {

/// Periodic spatial grid on [0, L); node 0 need not be 0.
struct Grid {
    double L = 0;
    std::vector<double> x;                 // strictly increasing nodes
    std::vector<int> puncture_node;        // index of the node at each puncture

    int size() const { return static_cast<int>(x.size()); }
    double h(int j) const {  // spacing to the next node, periodic
        int n = size();
        double d = x[(j + 1) % n] - x[j];
        return j + 1 < n ? d : d + L;
    }
};

/// Nodes geometrically clustered toward each puncture (the solution carries
/// log|x - x_i| structure there): spacing grows from min_h by `ratio` toward
/// each segment midpoint.
inline Grid make_grid(const CylinderConfig& cfg, double ratio = 1.15, double min_h_rel = 1e-4) {
    Grid g;
    g.L = cfg.L;
    double min_h = min_h_rel * cfg.L;
    int n = cfg.n();
    for (int i = 0; i < n; ++i) {
        double a = cfg.punctures[i];
        double b = i + 1 < n ? cfg.punctures[i + 1] : cfg.punctures[0] + cfg.L;
        double half = 0.5 * (b - a);
        std::vector<double> off{0.0};
        double step = min_h, pos = min_h;
        while (pos < half) {
            off.push_back(pos);
            step *= ratio;
            pos += step;
        }
        g.puncture_node.push_back(static_cast<int>(g.x.size()));
        for (double o : off) g.x.push_back(a + o);
        for (size_t k = off.size(); k-- > 1;) g.x.push_back(b - off[k]);
    }
    return g;
}

inline Grid make_uniform_grid(double L, int nodes) {
    Grid g;
    g.L = L;
    for (int j = 0; j < nodes; ++j) g.x.push_back(L * j / nodes);
    return g;
}

struct PdeTrajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool sign_flip_event = false;
    double event_time = std::numeric_limits<double>::quiet_NaN();
    int event_puncture = -1;
};

namespace detail {

/// Periodic tridiagonal solve (Thomas + Sherman-Morrison rank-1 correction).
/// a = sub, b = diag, c = super; tr / bl are the wrap-around corners.
inline std::vector<double> solve_periodic_tridiag(std::vector<double> a, std::vector<double> b,
                                                  std::vector<double> c, double tr, double bl,
                                                  std::vector<double> r) {
    int n = static_cast<int>(b.size());
    auto thomas = [&](const std::vector<double>& bb, std::vector<double> rhs) {
        std::vector<double> cp(n), x(n);
        double beta = bb[0];
        if (beta == 0) throw csf_error("pde: singular tridiagonal system");
        x[0] = rhs[0] / beta;
        for (int j = 1; j < n; ++j) {
            cp[j] = c[j - 1] / beta;
            beta = bb[j] - a[j] * cp[j];
            if (beta == 0) throw csf_error("pde: singular tridiagonal system");
            x[j] = (rhs[j] - a[j] * x[j - 1]) / beta;
        }
        for (int j = n - 2; j >= 0; --j) x[j] -= cp[j + 1] * x[j + 1];
        return x;
    };
    if (tr == 0 && bl == 0) return thomas(b, std::move(r));
    double gamma = -b[0];
    std::vector<double> bmod = b;
    bmod[0] -= gamma;
    bmod[n - 1] -= tr * bl / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = bl;
    std::vector<double> y = thomas(bmod, std::move(r));
    std::vector<double> q = thomas(bmod, u);
    double vy = y[0] + tr / gamma * y[n - 1];
    double vq = 1.0 + q[0] + tr / gamma * q[n - 1];
    if (vq == 0) throw csf_error("pde: singular correction");
    for (int j = 0; j < n; ++j) y[j] -= vy / vq * q[j];
    return y;
}

/// Second difference weights on the nonuniform periodic grid.
struct Laplacian {
    std::vector<double> wl, wc, wr;  // f'' ~ wl f_{j-1} + wc f_j + wr f_{j+1}

    explicit Laplacian(const Grid& g) {
        int n = g.size();
        for (int j = 0; j < n; ++j) {
            double hm = g.h((j + n - 1) % n), hp = g.h(j);
            wl.push_back(2.0 / (hm * (hm + hp)));
            wr.push_back(2.0 / (hp * (hm + hp)));
            wc.push_back(-wl.back() - wr.back());
        }
    }
};

}  // namespace detail

struct PdeOptions {
    double dt0 = 1e-4;
    double dt_growth = 0.02;  // dt = max(dt0, dt_growth * t)
    double dt_max = std::numeric_limits<double>::infinity();
    double newton_tol = 1e-11;
    std::vector<double> sample_times;  // record only these when non-empty
    bool dirichlet_ends = false;       // pin the first/last node (path with fixed endpoints)
};

/// Backward-Euler / Newton method-of-lines integration of
///   df/dt = rho(x, f) * f_xx
/// on the periodic grid, with a sign monitor at the puncture nodes: the
/// reduced description loses meaning once the curve crosses a puncture, so a
/// sign flip terminates the run with an event report.
inline PdeTrajectory integrate_pde(const Grid& grid, std::vector<double> f0,
                                   const std::function<double(double, double)>& rho,
                                   const std::function<double(double, double)>& drho_dy,
                                   double t_end, const PdeOptions& opt = {}) {
    int n = grid.size();
    if (static_cast<int>(f0.size()) != n) throw std::domain_error("integrate_pde: f0/grid size mismatch");
    for (int p : grid.puncture_node)
        if (f0[p] == 0) throw std::domain_error("integrate_pde: f0 vanishes at a puncture");
    detail::Laplacian lap(grid);
    std::vector<int> sign0;
    for (int p : grid.puncture_node) sign0.push_back(f0[p] > 0 ? 1 : -1);

    PdeTrajectory traj;
    traj.grid = grid;
    std::vector<double> samples = opt.sample_times;
    std::sort(samples.begin(), samples.end());
    size_t next = 0;
    while (next < samples.size() && samples[next] <= 0) ++next;
    auto record = [&](double t, const std::vector<double>& f) {
        traj.times.push_back(t);
        traj.states.push_back(f);
    };
    if (samples.empty()) record(0.0, f0);

    auto d2 = [&](const std::vector<double>& f, int j) {
        return lap.wl[j] * f[(j + n - 1) % n] + lap.wc[j] * f[j] + lap.wr[j] * f[(j + 1) % n];
    };

    double t = 0;
    std::vector<double> f = std::move(f0);
    while (t < t_end - 1e-12 * (1.0 + t_end)) {
        double dt = std::min({std::max(opt.dt0, opt.dt_growth * t), opt.dt_max, t_end - t});
        if (next < samples.size()) dt = std::min(dt, samples[next] - t);
        bool stepped = false;
        while (!stepped) {
            // Newton on G(w) = w - f - dt rho(x, w) d2 w
            std::vector<double> w = f;
            bool converged = false;
            for (int it = 0; it < 30; ++it) {
                std::vector<double> G(n);
                double gnorm = 0, scale = 0;
                for (int j = 0; j < n; ++j) {
                    bool pinned = opt.dirichlet_ends && (j == 0 || j == n - 1);
                    G[j] = pinned ? 0.0 : w[j] - f[j] - dt * rho(grid.x[j], w[j]) * d2(w, j);
                    gnorm = std::max(gnorm, std::abs(G[j]));
                    scale = std::max(scale, std::abs(w[j]));
                }
                if (gnorm < opt.newton_tol * (1.0 + scale)) {
                    converged = true;
                    break;
                }
                std::vector<double> a(n), b(n), c(n);
                double tr = 0, bl = 0;
                for (int j = 0; j < n; ++j) {
                    double rj = rho(grid.x[j], w[j]);
                    double dj = drho_dy(grid.x[j], w[j]);
                    a[j] = -dt * rj * lap.wl[j];
                    b[j] = 1.0 - dt * (rj * lap.wc[j] + dj * d2(w, j));
                    c[j] = -dt * rj * lap.wr[j];
                }
                if (opt.dirichlet_ends) {
                    a[0] = c[0] = 0;
                    b[0] = 1.0;
                    G[0] = 0;
                    a[n - 1] = c[n - 1] = 0;
                    b[n - 1] = 1.0;
                    G[n - 1] = 0;
                } else {
                    tr = a[0];  // coupling of node 0 to node n-1
                    bl = c[n - 1];
                    a[0] = 0;
                    c[n - 1] = 0;
                }
                std::vector<double> step = detail::solve_periodic_tridiag(a, b, c, tr, bl, G);
                for (int j = 0; j < n; ++j) w[j] -= step[j];
            }
            if (converged) {
                f = std::move(w);
                t += dt;
                stepped = true;
            } else {
                dt *= 0.25;
                if (dt < 1e-14 * (1.0 + t)) throw csf_error("integrate_pde: Newton failure (stiffness)");
            }
        }
        for (size_t i = 0; i < grid.puncture_node.size(); ++i) {
            double v = f[grid.puncture_node[i]];
            if (v == 0 || (v > 0) != (sign0[i] > 0)) {
                traj.sign_flip_event = true;
                traj.event_time = t;
                traj.event_puncture = static_cast<int>(i);
                record(t, f);
                return traj;
            }
        }
        if (samples.empty()) {
            record(t, f);
        } else if (next < samples.size() && t >= samples[next] - 1e-12 * (1.0 + t)) {
            record(t, f);
            ++next;
        }
    }
    if (traj.times.empty() || traj.times.back() < t - 1e-12) record(t, f);
    return traj;
}

inline PdeTrajectory integrate_pde(const CylinderConfig& cfg, const Grid& grid,
                                   std::vector<double> f0, double t_end,
                                   const PdeOptions& opt = {}) {
    auto rho = [&cfg](double x, double y) { return cfg.rho(x, y); };
    auto drho = [&cfg](double x, double y) {
        // rho = 1/s with s = sum 1/(dx^2+y^2): d rho/dy = 2y sum (dx^2+y^2)^-2 / s^2
        double s = 0, s2 = 0;
        for (double xi : cfg.punctures) {
            double dx = cfg.dist_per(x, xi);
            double d2 = dx * dx + y * y;
            s += 1.0 / d2;
            s2 += 1.0 / (d2 * d2);
        }
        return 2.0 * y * s2 / (s * s);
    };
    return integrate_pde(grid, std::move(f0), rho, drho, t_end, opt);
}

/// y_i(t) = |f(x_i, t)| / pi at each puncture, plus the (fixed) signs.
struct YSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> y;  // y[k][i]
    std::vector<int> eps;
};

inline YSeries extract_y(const PdeTrajectory& traj) {
    YSeries out;
    out.times = traj.times;
    for (const auto& f : traj.states) {
        std::vector<double> row;
        for (int p : traj.grid.puncture_node) row.push_back(std::abs(f[p]) / M_PI);
        out.y.push_back(std::move(row));
    }
    if (!traj.states.empty())
        for (int p : traj.grid.puncture_node)
            out.eps.push_back(traj.states.front()[p] > 0 ? 1 : -1);
    return out;
}

}  // namespace wflow::csf
