#pragma once

#include "wflow/lozenge/algebra.hpp"

namespace wflow::loz {

/// Inverse of an invertible degree-0 element, via its left-multiplication
/// matrix on A0.
inline Vec invert0(const LozengeAlgebra& A, const Vec& g) {
    int n = A.dim(Comp::D0);
    Mat L(n, n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e(i) = 1.0;
        L.col(i) = A.mul(Comp::D0, g, Comp::D0, e)[Comp::D0];
    }
    Eigen::FullPivLU<Mat> lu(L);
    if (!lu.isInvertible()) throw lozenge_error("gauge: element of A0 not invertible");
    return lu.solve(A.unit0());
}

/// Complex gauge action on connections,
///   g . alpha = g*^-1 alpha' g* + g*^-1 (del g*) + g alpha'' g^-1 - (delbar g) g^-1.
inline Element gauge_act(const LozengeAlgebra& A, const Vec& g, const Element& alpha) {
    Vec gi = invert0(A, g);
    Vec gs = A.star(Comp::D0, g);
    Vec gsi = invert0(A, gs);

    Element r = A.zero();
    // (1,0)-part
    {
        Element t = A.mul(Comp::D0, gsi, Comp::D10, alpha[Comp::D10]);
        r[Comp::D10] = A.mul(Comp::D10, t[Comp::D10], Comp::D0, gs)[Comp::D10];
        Vec dgs = A.diff(Comp::D0, gs)[Comp::D10];
        r[Comp::D10] += A.mul(Comp::D0, gsi, Comp::D10, dgs)[Comp::D10];
    }
    // (0,1)-part
    {
        Element t = A.mul(Comp::D0, g, Comp::D01, alpha[Comp::D01]);
        r[Comp::D01] = A.mul(Comp::D01, t[Comp::D01], Comp::D0, gi)[Comp::D01];
        Vec dg = A.diff(Comp::D0, g)[Comp::D01];
        r[Comp::D01] -= A.mul(Comp::D01, dg, Comp::D0, gi)[Comp::D01];
    }
    return r;
}

/// Curvature F = theta + d alpha + alpha^2 of a connection alpha in A1.
inline Element curvature(const LozengeAlgebra& A, const Element& alpha) {
    Element F = A.zero();
    F[Comp::D2] = A.theta2();
    F += A.diff(alpha);
    F += A.mul(alpha, alpha);
    Element r = A.zero();
    r[Comp::D2] = F[Comp::D2];
    return r;
}

}  // namespace wflow::loz
