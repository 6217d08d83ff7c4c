#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace wflow::util {

/// Minimize 1/2 x^T D x (D diagonal, positive) subject to A x >= b.
/// Dual projected Gauss-Seidel, followed by an exact equality solve on the
/// detected active set so the minimizer satisfies its active constraints to
/// machine precision.
struct QpResult {
    Eigen::VectorXd x;
    std::vector<int> active;
    double objective = 0;
};

inline QpResult solve_diag_qp(const Eigen::VectorXd& d,
                              const Eigen::MatrixXd& A,
                              const Eigen::VectorXd& b,
                              const Eigen::VectorXd& feasible_hint) {
    const int n = static_cast<int>(d.size());
    const int m = static_cast<int>(b.size());
    for (int j = 0; j < m; ++j)
        if (A.row(j) * feasible_hint < b(j) - 1e-8)
            throw std::runtime_error("solve_diag_qp: infeasible start");

    Eigen::VectorXd dinv = d.cwiseInverse();
    Eigen::VectorXd q(m);  // diagonal of A D^-1 A^T
    for (int j = 0; j < m; ++j) {
        q(j) = A.row(j) * dinv.asDiagonal() * A.row(j).transpose();
        if (q(j) <= 0)
            throw std::runtime_error("solve_diag_qp: zero constraint row");
    }

    Eigen::VectorXd mu = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    const double tol = 1e-13;
    bool converged = false;
    for (int sweep = 0; sweep < 500000 && !converged; ++sweep) {
        converged = true;
        for (int j = 0; j < m; ++j) {
            double r = b(j) - A.row(j) * x;
            double delta = std::max(-mu(j), r / q(j));
            if (std::abs(delta) > tol) {
                mu(j) += delta;
                x += delta * (dinv.asDiagonal() * A.row(j).transpose());
                converged = false;
            }
        }
    }
    if (!converged) throw std::runtime_error("solve_diag_qp: no convergence");

    // Re-solve exactly on the active set (least squares handles the
    // linearly dependent rows that arise from chained difference constraints).
    std::vector<int> act;
    for (int j = 0; j < m; ++j)
        if (A.row(j) * x - b(j) < 1e-7) act.push_back(j);
    if (!act.empty()) {
        int k = static_cast<int>(act.size());
        Eigen::MatrixXd Aa(k, n);
        Eigen::VectorXd ba(k);
        for (int j = 0; j < k; ++j) {
            Aa.row(j) = A.row(act[j]);
            ba(j) = b(act[j]);
        }
        // minimizer of 1/2 x^T D x on {Aa x = ba}: x = D^-1 Aa^T nu with
        // (Aa D^-1 Aa^T) nu = ba, taking the min-norm nu.
        Eigen::MatrixXd G = Aa * dinv.asDiagonal() * Aa.transpose();
        Eigen::VectorXd nu = G.completeOrthogonalDecomposition().solve(ba);
        Eigen::VectorXd xe = dinv.asDiagonal() * (Aa.transpose() * nu);
        bool ok = (Aa * xe - ba).lpNorm<Eigen::Infinity>() < 1e-9;
        for (int j = 0; j < m && ok; ++j)
            if (A.row(j) * xe < b(j) - 1e-9) ok = false;
        if (ok) x = xe;
    }

    QpResult res;
    res.x = x;
    res.active = act;
    for (int i = 0; i < n; ++i) res.objective += 0.5 * d(i) * x(i) * x(i);
    return res;
}

}  // namespace wflow::util
