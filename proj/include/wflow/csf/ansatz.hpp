#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "wflow/csf/cylinder.hpp"
#include "wflow/csf/pde.hpp"

namespace wflow::csf {

/// Profile of the curve across a puncture: unique solution of
/// (x^2+1) phi'' = 1 with phi(0) = phi'(0) = 0; phi ~ (pi/2)|x| - log|x|.
inline double phi(double x) { return x * std::atan(x) - 0.5 * std::log1p(x * x); }
inline double phi_prime(double x) { return std::atan(x); }

/// Segment profile functions chi, psi on [x_i, x_{i+1}]:
///   rho(x,0) chi'' = x - x_i,   rho(x,0) psi'' = x_{i+1} - x.
/// Both are log-divergent at the far endpoint (rho has a quadratic zero
/// there and the right-hand side does not vanish). Normalization: zero at
/// the near endpoint, and zero constant term after removing the divergence
///   chi(x) + m log(x_{i+1} - x) -> 0,   psi(x) + m log(x - x_i) -> 0
/// where m is the segment length.
struct SegmentBasis {
    int seg = 0;                // between punctures seg and seg+1
    std::vector<int> nodes;     // interior grid node indices
    std::vector<double> xi;     // local coordinate x - x_seg (unwrapped)
    std::vector<double> chi, psi;
    double length = 0;
};

namespace detail {

// Dirichlet solve of w'' = r on nonuniform nodes xs (w given at both ends).
inline std::vector<double> solve_dirichlet(const std::vector<double>& xs,
                                           const std::vector<double>& r, double w0, double wK) {
    int K = static_cast<int>(xs.size()) - 1;
    int n = K - 1;
    if (n < 1) throw csf_error("segment basis: too few interior nodes");
    Eigen::VectorXd dl(n), d(n), du(n), b(n);
    for (int j = 1; j < K; ++j) {
        double hm = xs[j] - xs[j - 1], hp = xs[j + 1] - xs[j];
        double wl = 2.0 / (hm * (hm + hp)), wr = 2.0 / (hp * (hm + hp));
        int row = j - 1;
        dl(row) = wl;
        d(row) = -(wl + wr);
        du(row) = wr;
        b(row) = r[j];
    }
    b(0) -= dl(0) * w0;
    b(n - 1) -= du(n - 1) * wK;
    // Thomas
    for (int j = 1; j < n; ++j) {
        double f = dl(j) / d(j - 1);
        d(j) -= f * du(j - 1);
        b(j) -= f * b(j - 1);
    }
    std::vector<double> w(xs.size());
    w[K - 1] = b(n - 1) / d(n - 1);
    for (int j = n - 2; j >= 0; --j) w[j + 1] = (b(j) - du(j) * w[j + 2]) / d(j);
    w[0] = w0;
    w[K] = wK;
    return w;
}

}  // namespace detail

inline SegmentBasis build_segment_basis(const CylinderConfig& cfg, const Grid& grid, int seg) {
    int n = cfg.n();
    if (static_cast<int>(grid.puncture_node.size()) != n)
        throw csf_error("segment basis: grid lacks puncture nodes");
    int ia = grid.puncture_node[seg], ib = grid.puncture_node[(seg + 1) % n];
    double xl = cfg.punctures[seg];
    double mseg = cfg.m[(seg + 1) % n];

    // unwrapped local nodes xi in [0, mseg]
    std::vector<double> xs;
    std::vector<int> ids;
    int N = static_cast<int>(grid.x.size());
    for (int j = ia;; j = (j + 1) % N) {
        double xi_j = grid.x[j] - xl;
        if (xi_j < 0) xi_j += cfg.L;
        xs.push_back(j == ia ? 0.0 : xi_j);
        ids.push_back(j);
        if (j == ib) break;
    }
    xs.back() = mseg;
    int K = static_cast<int>(xs.size()) - 1;

    // regular part of 1/rho(x,0) after removing the quadratic poles at both ends
    auto Rreg = [&](double xi) {
        double x = xl + xi;
        return 1.0 / cfg.rho(x, 0.0) - 1.0 / (xi * xi) - 1.0 / ((mseg - xi) * (mseg - xi));
    };
    double lm = std::log(mseg);

    // chi'' = xi/rho = 1/xi + mseg/(mseg-xi)^2 - 1/(mseg-xi) + xi*Rreg
    {
        std::vector<double> r(xs.size(), 0.0);
        for (int j = 1; j < K; ++j) r[j] = xs[j] * Rreg(xs[j]);
        std::vector<double> w = detail::solve_dirichlet(xs, r, 2 * mseg * lm - mseg, mseg - mseg * lm);
        SegmentBasis out;
        out.seg = seg;
        out.length = mseg;
        for (int j = 1; j < K; ++j) {
            double xi = xs[j], d = mseg - xi;
            double P = xi * (std::log(xi) - 1.0) - mseg * std::log(d) - d * (std::log(d) - 1.0);
            out.nodes.push_back(ids[j]);
            out.xi.push_back(xi);
            out.chi.push_back(w[j] + P);
        }
        // psi'' = (mseg-xi)/rho: mirrored singular split
        std::vector<double> r2(xs.size(), 0.0);
        for (int j = 1; j < K; ++j) r2[j] = (mseg - xs[j]) * Rreg(xs[j]);
        std::vector<double> w2 =
            detail::solve_dirichlet(xs, r2, mseg - mseg * lm, 2 * mseg * lm - mseg);
        for (int j = 1; j < K; ++j) {
            double xi = xs[j], d = mseg - xi;
            double P = d * (std::log(d) - 1.0) - mseg * std::log(xi) - xi * (std::log(xi) - 1.0);
            out.psi.push_back(w2[j] + P);
        }
        return out;
    }
}

struct AnsatzCoeffs {
    // a[i] = (a_{i,0}, a_{i,1}, a_{i,2}) near puncture i;
    // b[i] = (b_{i,0..3}) on the segment from x_i to x_{i+1}
    std::vector<Eigen::Vector3d> a;
    std::vector<Eigen::Vector4d> b;
    std::vector<double> fit_residual_pt, fit_residual_seg;  // relative LS residuals
    // six matching-equation residuals per puncture, relative to |a_{i,0}|-scale:
    // { m_i b_{i-1,0} = a_{i,0},  m_{i+1} b_{i,1} = a_{i,0},
    //   b_{i-1,0}-b_{i-1,1} = a_{i,1} - pi a_{i,2}/(2|a_{i,0}|),
    //   b_{i,0}-b_{i,1}   = a_{i,1} + pi a_{i,2}/(2|a_{i,0}|),
    //   m_i b_{i-1,2} = a_{i,2},  m_{i+1} b_{i,3} = a_{i,2} }
    std::vector<std::array<double, 6>> matching;
    bool regime_reached = true;
};

/// Least-squares fit of the near-puncture model
/// f = a0 + a1 (x-x_i) + a2 phi((x-x_i)/a0), with a0 = f(x_i) pinned.
inline Eigen::Vector3d fit_puncture(const CylinderConfig& cfg, const Grid& grid,
                                    const std::vector<double>& f, int i, double* rel_res = nullptr) {
    int n = cfg.n();
    double xi = cfg.punctures[i];
    double a0 = f[grid.puncture_node[i]];
    if (a0 == 0.0) throw csf_error("fit_puncture: vanishing value at puncture");
    double win = 0.45 * std::min(cfg.m[i], cfg.m[(i + 1) % n]);
    std::vector<double> ds, fs;
    for (size_t j = 0; j < grid.x.size(); ++j) {
        double d = grid.x[j] - xi;
        if (d > cfg.L / 2) d -= cfg.L;
        if (d < -cfg.L / 2) d += cfg.L;
        if (d == 0.0 || std::abs(d) > win) continue;
        ds.push_back(d);
        fs.push_back(f[j]);
    }
    if (ds.size() < 4) throw csf_error("fit_puncture: too few nodes in window");
    Eigen::MatrixXd A(ds.size(), 2);
    Eigen::VectorXd r(ds.size());
    for (size_t k = 0; k < ds.size(); ++k) {
        A(k, 0) = ds[k];
        A(k, 1) = phi(ds[k] / a0);
        r(k) = fs[k] - a0;
    }
    Eigen::Vector2d c = A.colPivHouseholderQr().solve(r);
    if (rel_res) *rel_res = (A * c - r).norm() / (1e-300 + r.norm());
    return {a0, c(0), c(1)};
}

/// Least-squares fit of the segment model
/// f = b0 (x-x_i) + b1 (x_{i+1}-x) + b2 chi + b3 psi on interior nodes.
inline Eigen::Vector4d fit_segment(const SegmentBasis& sb, const std::vector<double>& f,
                                   double* rel_res = nullptr) {
    size_t K = sb.nodes.size();
    if (K < 6) throw csf_error("fit_segment: too few nodes");
    Eigen::MatrixXd A(K, 4);
    Eigen::VectorXd r(K);
    for (size_t k = 0; k < K; ++k) {
        A(k, 0) = sb.xi[k];
        A(k, 1) = sb.length - sb.xi[k];
        A(k, 2) = sb.chi[k];
        A(k, 3) = sb.psi[k];
        r(k) = f[sb.nodes[k]];
    }
    Eigen::Vector4d c = A.colPivHouseholderQr().solve(r);
    if (rel_res) *rel_res = (A * c - r).norm() / (1e-300 + r.norm());
    return c;
}

/// Full fit of one curve state plus the matching-table residuals. The fit
/// is flagged regime_reached = false when any relative LS residual exceeds
/// the threshold (the model only applies once all y_i are small).
inline AnsatzCoeffs fit_ansatz(const CylinderConfig& cfg, const Grid& grid,
                               const std::vector<double>& f,
                               const std::vector<SegmentBasis>& bases,
                               double regime_threshold = 0.05) {
    int n = cfg.n();
    AnsatzCoeffs out;
    out.a.resize(n);
    out.b.resize(n);
    out.fit_residual_pt.resize(n);
    out.fit_residual_seg.resize(n);
    for (int i = 0; i < n; ++i) {
        out.a[i] = fit_puncture(cfg, grid, f, i, &out.fit_residual_pt[i]);
        out.b[i] = fit_segment(bases[i], f, &out.fit_residual_seg[i]);
        if (out.fit_residual_pt[i] > regime_threshold ||
            out.fit_residual_seg[i] > regime_threshold)
            out.regime_reached = false;
    }
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        int prev = (i + n - 1) % n, next = (i + 1) % n;
        const auto& a = out.a[i];
        const auto& bl = out.b[prev];  // segment left of x_i
        const auto& br = out.b[i];     // segment right of x_i
        double s0 = std::abs(a(0)), s1 = std::abs(a(1)) + s0 / cfg.m[i], s2 = std::abs(a(2)) + 1e-300;
        out.matching.push_back({(cfg.m[i] * bl(0) - a(0)) / s0,
                                (cfg.m[next] * br(1) - a(0)) / s0,
                                (bl(0) - bl(1) - a(1) + pi * a(2) / (2 * s0)) / s1,
                                (br(0) - br(1) - a(1) - pi * a(2) / (2 * s0)) / s1,
                                (cfg.m[i] * bl(2) - a(2)) / s2,
                                (cfg.m[next] * br(3) - a(2)) / s2});
    }
    return out;
}

/// Time-derivative checks of the ansatz along a PDE trajectory at sample k
/// (central differences): adot0[i] compares da_{i,0}/dt with a_{i,2}, and
/// slope[i] compares pi adot_{i,0}/|a_{i,0}| with the reduced-system
/// right-hand side for y = |a_0|/pi.
struct AnsatzDynamics {
    std::vector<double> adot0_rel;  // |da0/dt - a2| / |a2|
    std::vector<double> slope_rel;  // relative mismatch against the y-system
};

inline AnsatzDynamics check_dynamics(const CylinderConfig& cfg, const PdeTrajectory& traj,
                                     const std::vector<SegmentBasis>& bases, size_t k,
                                     double regime_threshold = 0.05) {
    if (k == 0 || k + 1 >= traj.times.size())
        throw std::domain_error("check_dynamics: need interior sample");
    int n = cfg.n();
    AnsatzCoeffs cm = fit_ansatz(cfg, traj.grid, traj.states[k - 1], bases, regime_threshold);
    AnsatzCoeffs c0 = fit_ansatz(cfg, traj.grid, traj.states[k], bases, regime_threshold);
    AnsatzCoeffs cp = fit_ansatz(cfg, traj.grid, traj.states[k + 1], bases, regime_threshold);
    double dt = traj.times[k + 1] - traj.times[k - 1];
    const double pi = std::acos(-1.0);
    AnsatzDynamics out;
    for (int i = 0; i < n; ++i) {
        double adot = (cp.a[i](0) - cm.a[i](0)) / dt;
        out.adot0_rel.push_back(std::abs(adot - c0.a[i](2)) / (std::abs(c0.a[i](2)) + 1e-300));
        // reduced system: pi adot_i/|a_i| = neighbor coupling of the a_0's
        int prev = (i + n - 1) % n, next = (i + 1) % n;
        double rhs = (c0.a[prev](0) - c0.a[i](0)) / cfg.m[i] +
                     (c0.a[next](0) - c0.a[i](0)) / cfg.m[next];
        double lhs = pi * adot / std::abs(c0.a[i](0));
        out.slope_rel.push_back(std::abs(lhs - rhs) / (std::abs(rhs) + 1e-300));
    }
    return out;
}

}  // namespace wflow::csf
