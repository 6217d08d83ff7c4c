#pragma once

#include "wflow/flow/calculus.hpp"

namespace wflow::flow {

struct MetricTrajectory {
    std::vector<double> times;
    std::vector<Vec> states;  // h(t), positive self-adjoint, A0 coordinates
    std::vector<double> residuals;
    std::vector<double> steps;  // accepted step sizes at the sample times

    const Vec& final_state() const {
        if (states.empty()) throw flow_error("trajectory empty");
        return states.back();
    }
};

/// Real coordinates on the self-adjoint part of A0 (star is an isometric
/// antilinear involution; its +1 eigenspace has real dimension dim A0).
struct SelfAdjointBasis {
    int n;              // complex dimension of A0
    Eigen::MatrixXd B;  // 2n x n, orthonormal columns

    explicit SelfAdjointBasis(const LozengeAlgebra& A) : n(A.dim(Comp::D0)) {
        Eigen::MatrixXd T(2 * n, 2 * n);
        for (int j = 0; j < 2 * n; ++j) {
            Vec e = Vec::Zero(n);
            if (j < n)
                e(j) = 1.0;
            else
                e(j - n) = Cplx(0, 1);
            Vec s = A.star(Comp::D0, e);
            T.col(j).head(n) = s.real();
            T.col(j).tail(n) = s.imag();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
        std::vector<int> fixed;
        for (int j = 0; j < 2 * n; ++j)
            if (es.eigenvalues()(j) > 0.5) fixed.push_back(j);
        if (static_cast<int>(fixed.size()) != n)
            throw flow_error("self-adjoint subspace has unexpected dimension");
        B.resize(2 * n, n);
        for (int j = 0; j < n; ++j) B.col(j) = es.eigenvectors().col(fixed[j]);
    }

    Vec to_elem(const Eigen::VectorXd& x) const {
        Eigen::VectorXd f = B * x;
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = Cplx(f(i), f(n + i));
        return v;
    }

    Eigen::VectorXd to_coords(const Vec& v) const {
        Eigen::VectorXd f(2 * n);
        f.head(n) = v.real();
        f.tail(n) = v.imag();
        return B.transpose() * f;
    }
};

namespace detail {

/// Chern connection of the metric h: A_{alpha,h} = alpha'' + h^-1 alpha' h + h^-1 del h.
inline Element connection_h(const LozengeAlgebra& A, const Element& alpha, const Vec& h,
                            const Vec& hinv) {
    Element r = A.zero();
    r[Comp::D01] = alpha[Comp::D01];
    Vec t = A.mul(Comp::D0, hinv, Comp::D10, alpha[Comp::D10])[Comp::D10];
    r[Comp::D10] = A.mul(Comp::D10, t, Comp::D0, h)[Comp::D10];
    Vec dh = A.diff(Comp::D0, h)[Comp::D10];
    r[Comp::D10] += A.mul(Comp::D0, hinv, Comp::D10, dh)[Comp::D10];
    return r;
}

/// R(h) with h^-1 dh/dt = R(h); optionally reports ||Lambda F - lambda||.
inline Vec metric_rhs(const LozengeAlgebra& A, const Element& alpha, const Vec& h,
                      double* residual = nullptr) {
    Vec hinv = fn0(A, h, [](double x) {
        if (!(x > 0)) throw flow_error("flow: metric lost positive definiteness");
        return 1.0 / x;
    });
    Element Ah = connection_h(A, alpha, h, hinv);
    Vec F = A.theta2() + A.diff(Ah)[Comp::D2] + A.mul(Ah, Ah)[Comp::D2];
    Vec res = A.lambda(F) - A.slope() * A.unit0();
    if (residual) *residual = res.norm();
    return Cplx(0, -2.0) * res;
}

/// du/dt for u = log h: inverse of the derivative of exp applied to R(exp u),
/// through the spectral calculus of ad_u. The result must be self-adjoint
/// (to 1e-10) because dh/dt = h R(h) is; it is symmetrized before returning.
inline Vec log_metric_rhs(const LozengeAlgebra& A, const Element& alpha, const Vec& u,
                          double* residual = nullptr) {
    Vec h = exp0(A, u);
    Vec R = metric_rhs(A, alpha, h, residual);
    Mat M = left_mult0(A, u) - right_mult0(A, u);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.adjoint()));
    Eigen::VectorXd psi(es.eigenvalues().size());
    for (int i = 0; i < psi.size(); ++i) {
        double x = es.eigenvalues()(i);
        psi(i) = std::abs(x) < 1e-5 ? 1.0 + 0.5 * x + x * x / 12.0 : x / (1.0 - std::exp(-x));
    }
    Vec udot = es.eigenvectors() * (psi.asDiagonal() * (es.eigenvectors().adjoint() * R));
    Vec s = sym0(A, udot);
    double scale = 1.0 + psi.cwiseAbs().maxCoeff() * R.norm();
    if ((udot - s).norm() > 1e-9 * scale)
        throw flow_error("flow: right-hand side lost self-adjointness");
    return s;
}

/// Cached finite-difference Jacobian of the log-coordinate right-hand side,
/// reused across substeps and time steps (chord Newton) and refreshed only on
/// slow convergence.
struct StepperCache {
    Eigen::MatrixXd JF;
    bool valid = false;
};

/// One implicit midpoint step u -> w with w = u + dt F((u+w)/2).
inline bool midpoint_step(const LozengeAlgebra& A, const Element& alpha,
                          const SelfAdjointBasis& sab, StepperCache& cache, const Vec& u,
                          double dt, Vec& w_out) {
    auto F = [&](const Eigen::VectorXd& x) {
        return sab.to_coords(log_metric_rhs(A, alpha, sab.to_elem(x)));
    };
    Eigen::VectorXd xu = sab.to_coords(u);
    int m = static_cast<int>(xu.size());
    Eigen::VectorXd f0 = F(xu);
    auto G = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return x - xu - dt * F(0.5 * (xu + x));
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        if (!cache.valid) {
            double eps = 1e-7 * (1.0 + xu.norm());
            cache.JF.resize(m, m);
            for (int k = 0; k < m; ++k) {
                Eigen::VectorXd xp = xu;
                xp(k) += eps;
                cache.JF.col(k) = (F(xp) - f0) / eps;
            }
            cache.valid = true;
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(
            Eigen::MatrixXd::Identity(m, m) - 0.5 * dt * cache.JF);
        Eigen::VectorXd xw = xu + dt * f0;
        Eigen::VectorXd g = G(xw);
        for (int it = 0; it < 30; ++it) {
            double scale = 1.0 + xw.norm();
            if (g.norm() < 1e-12 * scale) {
                w_out = sab.to_elem(xw);
                return true;
            }
            Eigen::VectorXd step = lu.solve(g);
            if (!step.allFinite()) break;
            xw -= step;
            Eigen::VectorXd gn = G(xw);
            if (it > 4 && gn.norm() > 0.9 * g.norm()) break;  // stale Jacobian
            g = gn;
        }
        cache.valid = false;  // refresh and retry once
    }
    return false;
}

}  // namespace detail

/// Adaptive implicit-midpoint integration of the metric flow
///   h^-1 dh/dt = -2i (Lambda(theta + d A_{alpha,h} + A_{alpha,h}^2) - lambda)
/// in log-metric coordinates u = log h (positivity by construction). Error
/// control by step doubling with absolute tolerance on u. When sample times
/// are given only those are recorded, and `stop` (called at each sample) may
/// end the run early.
inline MetricTrajectory integrate_metric_flow(
    const LozengeAlgebra& A, const Element& alpha, const Vec& h0, double t_end,
    const std::vector<double>& sample_times = {},
    const std::function<bool(double, const Vec&, double)>& stop = {}, double tol = 1e-8) {
    if (!is_selfadjoint0(A, h0)) throw flow_error("flow: h0 not self-adjoint");
    if (!(min_eig0(A, h0) > 0)) throw flow_error("flow: h0 not positive definite");
    SelfAdjointBasis sab(A);
    detail::StepperCache cache;

    std::vector<double> samples = sample_times;
    std::sort(samples.begin(), samples.end());
    size_t next = 0;
    while (next < samples.size() && samples[next] <= 0) ++next;

    MetricTrajectory traj;
    double t = 0;
    Vec u = log0(A, h0);
    double dt = std::min(1e-2, t_end / 10);
    auto record = [&](double tt, double step) {
        double res = 0;
        detail::metric_rhs(A, alpha, exp0(A, u), &res);
        traj.times.push_back(tt);
        traj.states.push_back(exp0(A, u));
        traj.residuals.push_back(res);
        traj.steps.push_back(step);
        return stop && stop(tt, u, res);
    };
    if (samples.empty()) record(0.0, 0.0);

    while (t < t_end - 1e-12 * (1.0 + t_end)) {
        double target = t_end;
        if (next < samples.size()) target = std::min(target, samples[next]);
        double h_step = std::min(dt, target - t);
        Vec w1, wa, w2;
        bool ok = detail::midpoint_step(A, alpha, sab, cache, u, h_step, w1) &&
                  detail::midpoint_step(A, alpha, sab, cache, u, 0.5 * h_step, wa) &&
                  detail::midpoint_step(A, alpha, sab, cache, wa, 0.5 * h_step, w2);
        double err = ok ? (w1 - w2).norm() / 3.0 : std::numeric_limits<double>::infinity();
        if (!std::isfinite(err)) {
            ok = false;
            err = std::numeric_limits<double>::infinity();
        }
        if (err <= tol) {
            u = w2;
            t += h_step;
            if (min_eig0(A, exp0(A, u)) <= 0)
                throw flow_error("flow: positivity lost");  // cannot happen for finite u
            bool at_sample = next < samples.size() && t >= samples[next] - 1e-12 * (1.0 + t);
            if (at_sample || samples.empty()) {
                if (at_sample) ++next;
                if (record(t, h_step)) return traj;
            }
        }
        double grow = ok ? 0.9 * std::pow(tol / std::max(err, 1e-3 * tol), 1.0 / 3.0) : 0.3;
        dt = h_step * std::clamp(grow, 0.2, 5.0);
        if (dt < 1e-12 * (1.0 + t))
            throw flow_error("flow: step size underflow (stiffness) at t = " + std::to_string(t));
    }
    if (traj.times.empty() || traj.times.back() < t_end - 1e-9 * (1.0 + t_end)) record(t, dt);
    return traj;
}

/// Monotonicity of the flow in the positive-semidefinite order: integrates
/// both initial metrics on a shared grid and checks h_t - g_t >= -1e-8 id.
inline bool check_monotonicity(const LozengeAlgebra& A, const Element& alpha, const Vec& g0,
                               const Vec& h0, double t_end) {
    if (min_eig0(A, A.star(Comp::D0, h0 - g0) * 0.5 + (h0 - g0) * 0.5) < -1e-10)
        throw std::domain_error("check_monotonicity: requires g0 <= h0");
    std::vector<double> samples;
    for (int k = 15; k >= 0; --k) samples.push_back(t_end * std::pow(10.0, -k / 5.0));
    MetricTrajectory tg = integrate_metric_flow(A, alpha, g0, t_end, samples);
    MetricTrajectory th = integrate_metric_flow(A, alpha, h0, t_end, samples);
    if (tg.times.size() != th.times.size()) throw flow_error("monotonicity: grid mismatch");
    for (size_t i = 0; i < tg.times.size(); ++i)
        if (min_eig0(A, th.states[i] - tg.states[i]) < -1e-8) return false;
    return true;
}

/// Newton refinement of the fixed-point equation Lambda F_h = lambda in
/// u = log h, through the self-adjoint residual S(h) = h^1/2 R(h) h^-1/2.
inline Vec polish_fixed_point(const LozengeAlgebra& A, const Element& alpha, Vec u,
                              double tol = 1e-13) {
    SelfAdjointBasis sab(A);
    auto S = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Vec uu = sab.to_elem(x);
        Vec h = exp0(A, uu);
        Vec hs = sqrt0(A, h);
        Vec hsi = fn0(A, h, [](double v) { return 1.0 / std::sqrt(v); });
        Vec R = detail::metric_rhs(A, alpha, h);
        Vec t = A.mul(Comp::D0, hs, Comp::D0, A.mul(Comp::D0, R, Comp::D0, hsi)[Comp::D0])[Comp::D0];
        return sab.to_coords(sym0(A, t));
    };
    Eigen::VectorXd x = sab.to_coords(u);
    int m = static_cast<int>(x.size());
    for (int it = 0; it < 40; ++it) {
        Eigen::VectorXd s = S(x);
        if (s.norm() < tol) break;
        Eigen::MatrixXd J(m, m);
        double eps = 1e-7 * (1.0 + x.norm());
        for (int k = 0; k < m; ++k) {
            Eigen::VectorXd xp = x;
            xp(k) += eps;
            J.col(k) = (S(xp) - s) / eps;
        }
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(s);
        if (!step.allFinite()) break;
        x -= step;
    }
    return sab.to_elem(x);
}

}  // namespace wflow::flow
