#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "wflow/csf/cylinder.hpp"
#include "wflow/lattice/graph.hpp"

namespace wflow::csf {

/// Reduced puncture system
///   ydot_i / y_i = (e_{i-1} e_i / m_i) y_{i-1} - (1/m_i + 1/m_{i+1}) y_i
///                + (e_i e_{i+1} / m_{i+1}) y_{i+1}
/// integrated in the autonomous coordinates v_i = log(t y_i), s = log t:
///   dv_i/ds = 1 + (M e^v)_i
/// (derivation in docs/v-coordinates.md). Positivity of y is automatic and
/// the stiffness of the original clock disappears.

/// Coefficient matrix M of the y-system right-hand side; m[i] is the
/// segment between punctures i-1 and i (wrapping), as in CylinderConfig.
inline Eigen::MatrixXd coefficient_matrix(const lat::OrientedCycleGraph& g) {
    g.validate();
    int N = g.size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        int im = (i + N - 1) % N, ip = (i + 1) % N;
        M(i, im) += g.eps[im] * g.eps[i] / g.m[i];
        M(i, i) += -(1.0 / g.m[i] + 1.0 / g.m[ip]);
        M(i, ip) += g.eps[i] * g.eps[ip] / g.m[ip];
    }
    return M;
}

struct OdeTrajectory {
    std::vector<double> s;           // log t
    std::vector<Eigen::VectorXd> v;  // v_i = log(t y_i)
    std::vector<int> eps;

    std::vector<double> y_at(size_t k) const {
        std::vector<double> out;
        double t = std::exp(s[k]);
        for (int i = 0; i < v[k].size(); ++i) out.push_back(std::exp(v[k](i)) / t);
        return out;
    }
};

namespace detail {

inline Eigen::VectorXd v_rhs(const Eigen::MatrixXd& M, const Eigen::VectorXd& v) {
    Eigen::VectorXd z(v.size());
    for (int i = 0; i < v.size(); ++i) {
        if (v(i) > 500.0) throw csf_error("ode: e^v overflow (y not in the decay regime)");
        z(i) = std::exp(v(i));
    }
    return Eigen::VectorXd::Ones(v.size()) + M * z;
}

}  // namespace detail

/// Adaptive RK4 (step doubling) on the autonomous v-system from
/// (t0, y0) up to t_end, recording at the requested s = log t samples
/// (every accepted step if none are given).
inline OdeTrajectory integrate_ode(const lat::OrientedCycleGraph& g, double t0,
                                   const std::vector<double>& y0, double t_end,
                                   const std::vector<double>& s_samples = {},
                                   double tol = 1e-10) {
    if (static_cast<int>(y0.size()) != g.size())
        throw std::domain_error("ode: initial data size mismatch");
    for (double y : y0)
        if (!(y > 0)) throw std::domain_error("ode: initial y must be positive");
    Eigen::MatrixXd M = coefficient_matrix(g);
    double s = std::log(t0), s_end = std::log(t_end);
    Eigen::VectorXd v(g.size());
    for (int i = 0; i < g.size(); ++i) v(i) = std::log(t0 * y0[i]);

    auto rk4 = [&](const Eigen::VectorXd& u, double h) {
        Eigen::VectorXd k1 = detail::v_rhs(M, u);
        Eigen::VectorXd k2 = detail::v_rhs(M, u + 0.5 * h * k1);
        Eigen::VectorXd k3 = detail::v_rhs(M, u + 0.5 * h * k2);
        Eigen::VectorXd k4 = detail::v_rhs(M, u + h * k3);
        return (u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
    };

    std::vector<double> samples = s_samples;
    std::sort(samples.begin(), samples.end());
    size_t next = 0;
    while (next < samples.size() && samples[next] <= s + 1e-12) ++next;

    OdeTrajectory traj;
    traj.eps = g.eps;
    traj.s.push_back(s);
    traj.v.push_back(v);
    double h = 1e-3;
    while (s < s_end - 1e-12 * (1.0 + std::abs(s_end))) {
        double target = next < samples.size() ? std::min(samples[next], s_end) : s_end;
        double hs = std::min(h, target - s);
        Eigen::VectorXd w1 = rk4(v, hs);
        Eigen::VectorXd w2 = rk4(rk4(v, 0.5 * hs), 0.5 * hs);
        double err = (w1 - w2).norm() / 15.0;
        if (!std::isfinite(err)) throw csf_error("ode: step failure");
        if (err <= tol * (1.0 + v.norm())) {
            v = w2;
            s += hs;
            bool hit = next < samples.size() && s >= samples[next] - 1e-12 * (1.0 + std::abs(s));
            if (hit || samples.empty()) {
                traj.s.push_back(s);
                traj.v.push_back(v);
            }
            if (hit) ++next;
        }
        double grow = err > 0 ? 0.9 * std::pow(tol * (1.0 + v.norm()) / err, 0.2) : 5.0;
        h = hs * std::clamp(grow, 0.2, 5.0);
        if (h < 1e-14) throw csf_error("ode: step underflow");
    }
    if (traj.s.back() < s - 1e-9) {
        traj.s.push_back(s);
        traj.v.push_back(v);
    }
    return traj;
}

/// Newton solve of the fixed-point system 1 + M e^{v*} = 0.
inline Eigen::VectorXd v_fixed_point(const lat::OrientedCycleGraph& g, const Eigen::VectorXd& guess,
                                     double tol = 1e-12) {
    Eigen::MatrixXd M = coefficient_matrix(g);
    Eigen::VectorXd v = guess;
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd z = v.array().exp();
        Eigen::VectorXd r = Eigen::VectorXd::Ones(v.size()) + M * z;
        if (r.norm() < tol) return v;
        // min-norm step: the equilibrium set can be a family (M kills the
        // sign vector), so do not wander along the kernel direction
        Eigen::MatrixXd J = M * z.asDiagonal();
        Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(r);
        if (!step.allFinite()) break;
        v -= step;
    }
    throw csf_error("v_fixed_point: Newton did not converge");
}

}  // namespace wflow::csf
