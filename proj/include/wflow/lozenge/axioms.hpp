#pragma once

#include <string>

#include "wflow/lozenge/operators.hpp"

namespace wflow::loz {

struct AxiomReport {
    struct Item {
        std::string name;
        double violation = 0;
    };
    std::vector<Item> items;

    void add(std::string name, double v) { items.push_back({std::move(name), v}); }
    double max_violation() const {
        double m = 0;
        for (const auto& it : items) m = std::max(m, it.violation);
        return m;
    }
    bool pass(double tol = 1e-10) const { return max_violation() < tol; }
    const Item* worst() const {
        const Item* w = nullptr;
        for (const auto& it : items)
            if (!w || it.violation > w->violation) w = &it;
        return w;
    }
};

/// Evaluates every defining property of a lozenge algebra on basis elements
/// and records the largest violation of each.
inline AxiomReport check_axioms(const LozengeAlgebra& A) {
    AxiomReport rep;
    Layout lay(A);
    auto basis_vec = [&](Comp k, int i) {
        Vec v = Vec::Zero(A.dim(k));
        v(i) = 1.0;
        return v;
    };

    // grading: A10 * A10 = 0 and A01 * A01 = 0
    {
        double v = 0;
        for (Comp k : {Comp::D10, Comp::D01})
            for (int i = 0; i < A.dim(k); ++i)
                for (int j = 0; j < A.dim(k); ++j)
                    v = std::max(v, A.mul(k, basis_vec(k, i), k, basis_vec(k, j)).norm());
        rep.add("A10.A10 = 0 and A01.A01 = 0", v);
    }

    // unit
    {
        double v = 0;
        Vec one = A.unit0();
        for (Comp k : kComps)
            for (int i = 0; i < A.dim(k); ++i) {
                Vec e = basis_vec(k, i);
                v = std::max(v, (A.mul(Comp::D0, one, k, e)[k] - e).norm());
                v = std::max(v, (A.mul(k, e, Comp::D0, one)[k] - e).norm());
            }
        rep.add("1 is a two-sided unit", v);
    }

    // associativity on sampled basis triples of low total degree
    {
        double v = 0;
        for (Comp ka : kComps)
            for (Comp kb : kComps)
                for (Comp kc : kComps) {
                    if (degree(ka) + degree(kb) + degree(kc) > 2) continue;
                    for (int i = 0; i < A.dim(ka); ++i)
                        for (int j = 0; j < A.dim(kb); ++j)
                            for (int l = 0; l < A.dim(kc); ++l) {
                                Element ab = A.mul(ka, basis_vec(ka, i), kb, basis_vec(kb, j));
                                Element bc = A.mul(kb, basis_vec(kb, j), kc, basis_vec(kc, l));
                                Element abc = A.zero();
                                Element e_c = A.basis(kc, l), e_a = A.basis(ka, i);
                                Element lhs = A.mul(ab, e_c);
                                Element rhs = A.mul(e_a, bc);
                                v = std::max(v, (lhs - rhs).norm());
                            }
                }
        rep.add("associativity", v);
    }

    // trace kills supercommutators
    {
        double v = 0;
        const std::pair<Comp, Comp> pairs[] = {{Comp::D0, Comp::D2},
                                               {Comp::D10, Comp::D01},
                                               {Comp::D01, Comp::D10}};
        for (auto [ka, kb] : pairs)
            for (int i = 0; i < A.dim(ka); ++i)
                for (int j = 0; j < A.dim(kb); ++j) {
                    Element c = A.supercomm(ka, basis_vec(ka, i), kb, basis_vec(kb, j));
                    v = std::max(v, std::abs(A.trace(c[Comp::D2])));
                }
        rep.add("trace of supercommutators vanishes", v);
    }

    // trace kills exact terms
    {
        double v = 0;
        for (Comp k : {Comp::D10, Comp::D01})
            for (int i = 0; i < A.dim(k); ++i)
                v = std::max(v, std::abs(A.trace(A.diff(k, basis_vec(k, i))[Comp::D2])));
        rep.add("trace of exact terms vanishes", v);
    }

    // star: involution, antihomomorphism, trace compatibility, d-compatibility
    {
        double v = 0;
        for (Comp k : kComps)
            for (int i = 0; i < A.dim(k); ++i) {
                Element e = A.basis(k, i);
                v = std::max(v, (A.star(A.star(e)) - e).norm());
            }
        rep.add("star is an involution", v);
    }
    {
        double v = 0;
        for (Comp ka : kComps)
            for (Comp kb : kComps) {
                if (degree(ka) + degree(kb) > 2) continue;
                double sgn = (degree(ka) * degree(kb)) % 2 == 0 ? 1.0 : -1.0;
                for (int i = 0; i < A.dim(ka); ++i)
                    for (int j = 0; j < A.dim(kb); ++j) {
                        Element a = A.basis(ka, i), b = A.basis(kb, j);
                        Element lhs = A.star(A.mul(a, b));
                        Element rhs = A.mul(A.star(b), A.star(a)) * Cplx(sgn);
                        v = std::max(v, (lhs - rhs).norm());
                    }
            }
        rep.add("star antihomomorphism with Koszul sign", v);
    }
    {
        double v = 0;
        for (int i = 0; i < A.dim(Comp::D2); ++i) {
            Vec e = basis_vec(Comp::D2, i);
            // sample complex combinations to exercise antilinearity
            Vec f = Cplx(0.3, 0.7) * e;
            v = std::max(v, std::abs(A.trace(A.star(Comp::D2, f)) - std::conj(A.trace(f))));
        }
        rep.add("trace(a*) = conj trace(a)", v);
    }
    {
        double v = 0;
        for (Comp k : {Comp::D0, Comp::D10, Comp::D01})
            for (int i = 0; i < A.dim(k); ++i) {
                Element e = A.basis(k, i);
                v = std::max(v, (A.diff(A.star(e)) - A.star(A.diff(e))).norm());
            }
        rep.add("d commutes with star", v);
    }

    // omega and theta
    {
        Vec w = A.omega2();
        double v = (A.star(Comp::D2, w) - w).norm();
        for (int i = 0; i < A.dim(Comp::D0); ++i)
            v = std::max(v, A.supercomm(Comp::D2, w, Comp::D0, basis_vec(Comp::D0, i)).norm());
        rep.add("omega self-adjoint and central", v);
    }
    {
        Vec th = A.theta2();
        double v = (A.star(Comp::D2, th) + th).norm();
        for (int i = 0; i < A.dim(Comp::D0); ++i)
            v = std::max(v, A.supercomm(Comp::D2, th, Comp::D0, basis_vec(Comp::D0, i)).norm());
        rep.add("theta anti-self-adjoint and central", v);
    }

    // L and Lambda are inverse bijections A0 <-> A2
    {
        double v = 0;
        for (int i = 0; i < A.dim(Comp::D0); ++i) {
            Vec e = basis_vec(Comp::D0, i);
            v = std::max(v, (A.lambda(A.lmap(e)) - e).norm());
            // L agrees with multiplication by omega
            v = std::max(v, (A.mul(Comp::D2, A.omega2(), Comp::D0, e)[Comp::D2] - A.lmap(e)).norm());
        }
        for (int i = 0; i < A.dim(Comp::D2); ++i) {
            Vec e = basis_vec(Comp::D2, i);
            v = std::max(v, (A.lmap(A.lambda(e)) - e).norm());
        }
        rep.add("L and Lambda inverse, L = omega.", v);
    }

    // the three pairings: Hermitian, positive definite, and equal to the
    // standard inner product in the stored coordinates
    for (Comp k : {Comp::D0, Comp::D10, Comp::D01}) {
        int n = A.dim(k);
        Mat Gr(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Gr(i, j) = A.inner(k, basis_vec(k, i), basis_vec(k, j));
        double herm = (Gr - Gr.adjoint()).norm();
        double lam_min = n ? Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (Gr + Gr.adjoint()))
                                 .eigenvalues()
                                 .minCoeff()
                           : 1.0;
        double ortho = n ? (Gr - Mat::Identity(n, n)).norm() : 0.0;
        std::string which = k == Comp::D0 ? "A0" : (k == Comp::D10 ? "A10" : "A01");
        rep.add("pairing on " + which + " Hermitian", herm);
        rep.add("pairing on " + which + " positive definite", lam_min > 0 ? 0.0 : 1.0 - lam_min);
        rep.add("pairing on " + which + " orthonormal in coordinates", ortho);
    }

    // Leibniz rule for the differential
    {
        double v = 0;
        for (Comp ka : kComps)
            for (Comp kb : kComps) {
                if (degree(ka) + degree(kb) > 1) continue;
                double sgn = degree(ka) % 2 == 0 ? 1.0 : -1.0;
                for (int i = 0; i < A.dim(ka); ++i)
                    for (int j = 0; j < A.dim(kb); ++j) {
                        Element a = A.basis(ka, i), b = A.basis(kb, j);
                        Element lhs = A.diff(A.mul(a, b));
                        Element rhs = A.mul(A.diff(a), b) + A.mul(a, A.diff(b)) * Cplx(sgn);
                        v = std::max(v, (lhs - rhs).norm());
                    }
            }
        rep.add("Leibniz rule", v);
    }

    // Yang-Mills condition
    rep.add("Yang-Mills d(Lambda theta) = 0", A.diff(Comp::D0, A.lambda(A.theta2())).norm());

    return rep;
}

}  // namespace wflow::loz
