#pragma once

#include <functional>

#include "wflow/lozenge/gauge.hpp"

namespace wflow::flow {

using loz::AlgebraPtr;
using loz::Comp;
using loz::Cplx;
using loz::Element;
using loz::LozengeAlgebra;
using loz::Mat;
using loz::Vec;

struct flow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Left-multiplication matrix of a degree-0 element on A0. Hermitian whenever
/// the element is self-adjoint (coordinates are orthonormal).
inline Mat left_mult0(const LozengeAlgebra& A, const Vec& a) {
    int n = A.dim(Comp::D0);
    Mat L(n, n);
    for (int j = 0; j < n; ++j) {
        Vec e = Vec::Zero(n);
        e(j) = 1.0;
        L.col(j) = A.mul(Comp::D0, a, Comp::D0, e)[Comp::D0];
    }
    return L;
}

inline Mat right_mult0(const LozengeAlgebra& A, const Vec& a) {
    int n = A.dim(Comp::D0);
    Mat R(n, n);
    for (int j = 0; j < n; ++j) {
        Vec e = Vec::Zero(n);
        e(j) = 1.0;
        R.col(j) = A.mul(Comp::D0, e, Comp::D0, a)[Comp::D0];
    }
    return R;
}

inline Vec sym0(const LozengeAlgebra& A, const Vec& a) {
    return 0.5 * (a + A.star(Comp::D0, a));
}

inline bool is_selfadjoint0(const LozengeAlgebra& A, const Vec& a, double tol = 1e-9) {
    return (a - A.star(Comp::D0, a)).norm() <= tol * (1.0 + a.norm());
}

/// f applied to a self-adjoint degree-0 element, through the spectral
/// decomposition of its left-multiplication matrix: f(L_a) applied to the unit
/// recovers f(a) inside the (finite-dimensional, hence closed) subalgebra
/// generated by a.
inline Vec fn0(const LozengeAlgebra& A, const Vec& a, const std::function<double(double)>& f) {
    if (!is_selfadjoint0(A, a)) throw flow_error("fn0: element not self-adjoint");
    Mat L = left_mult0(A, a);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (L + L.adjoint()));
    Eigen::VectorXd fe(es.eigenvalues().size());
    for (int i = 0; i < fe.size(); ++i) fe(i) = f(es.eigenvalues()(i));
    return es.eigenvectors() * (fe.asDiagonal() * (es.eigenvectors().adjoint() * A.unit0()));
}

inline Vec exp0(const LozengeAlgebra& A, const Vec& a) {
    return fn0(A, a, [](double x) { return std::exp(x); });
}

inline Vec log0(const LozengeAlgebra& A, const Vec& a) {
    return fn0(A, a, [](double x) {
        if (!(x > 0)) throw flow_error("log0: element not positive definite");
        return std::log(x);
    });
}

inline Vec sqrt0(const LozengeAlgebra& A, const Vec& a) {
    return fn0(A, a, [](double x) {
        if (x < -1e-12) throw flow_error("sqrt0: element not positive semidefinite");
        return std::sqrt(std::max(x, 0.0));
    });
}

/// Spectrum of a self-adjoint degree-0 element (each eigenvalue repeated with
/// the multiplicity of the regular representation).
inline Eigen::VectorXd spectrum0(const LozengeAlgebra& A, const Vec& a) {
    Mat L = left_mult0(A, a);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (L + L.adjoint()));
    return es.eigenvalues();
}

inline double min_eig0(const LozengeAlgebra& A, const Vec& a) {
    return spectrum0(A, a).minCoeff();
}

inline double max_eig0(const LozengeAlgebra& A, const Vec& a) {
    return spectrum0(A, a).maxCoeff();
}

/// Smallest C >= 1 with C^-1 g <= h <= C g, both arguments positive definite.
inline double comparison_constant(const LozengeAlgebra& A, const Vec& g, const Vec& h) {
    Vec gis = fn0(A, g, [](double x) {
        if (!(x > 0)) throw flow_error("comparison_constant: g not positive definite");
        return 1.0 / std::sqrt(x);
    });
    Vec m = A.mul(Comp::D0, gis, Comp::D0, A.mul(Comp::D0, h, Comp::D0, gis)[Comp::D0])[Comp::D0];
    Eigen::VectorXd ev = spectrum0(A, m);
    if (!(ev.minCoeff() > 0)) throw flow_error("comparison_constant: h not positive definite");
    return std::max({1.0, ev.maxCoeff(), 1.0 / ev.minCoeff()});
}

}  // namespace wflow::flow
