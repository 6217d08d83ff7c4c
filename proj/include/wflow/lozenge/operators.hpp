#pragma once

#include <functional>

#include "wflow/lozenge/algebra.hpp"

namespace wflow::loz {

/// Offsets of the four components inside the stacked coordinate vector.
struct Layout {
    std::array<int, 4> off{};
    int total = 0;

    explicit Layout(const LozengeAlgebra& A) {
        int o = 0;
        for (int k = 0; k < 4; ++k) {
            off[k] = o;
            o += A.dim(kComps[k]);
        }
        total = o;
    }

    Vec pack(const Element& e) const {
        Vec v = Vec::Zero(total);
        for (int k = 0; k < 4; ++k)
            if (e.c[k].size()) v.segment(off[k], e.c[k].size()) = e.c[k];
        return v;
    }

    Element unpack(const LozengeAlgebra& A, const Vec& v) const {
        Element e = A.zero();
        for (int k = 0; k < 4; ++k) e.c[k] = v.segment(off[k], A.dim(kComps[k]));
        return e;
    }
};

/// Matrix of a linear map on the stacked coordinates.
inline Mat graded_matrix(const LozengeAlgebra& A, const Layout& lay,
                         const std::function<Element(Comp, const Vec&)>& f) {
    Mat M = Mat::Zero(lay.total, lay.total);
    for (int k = 0; k < 4; ++k) {
        Comp c = kComps[k];
        for (int i = 0; i < A.dim(c); ++i) {
            Vec e = Vec::Zero(A.dim(c));
            e(i) = 1.0;
            M.col(lay.off[k] + i) = lay.pack(f(c, e));
        }
    }
    return M;
}

/// The differentials, their adjoints from the first-order identities
/// (del* = i[Lam, delbar], delbar* = -i[Lam, del], d* = i[Lam, delbar - del])
/// and the three Laplacians, as matrices on the stacked coordinates.
struct Operators {
    Layout lay;
    Mat del, delbar, d;           // degree +1
    Mat lam, lmap;                // A2 -> A0 and back, zero elsewhere
    Mat del_star, delbar_star, d_star;
    Mat lap, lap_del, lap_delbar;

    explicit Operators(const LozengeAlgebra& A) : lay(A) {
        auto keep = [&](Comp out, const Element& e) {
            Element r = A.zero();
            r[out] = e[out];
            return r;
        };
        del = graded_matrix(A, lay, [&](Comp k, const Vec& v) {
            Element dv = A.diff(k, v);
            if (k == Comp::D0) return keep(Comp::D10, dv);
            if (k == Comp::D01) return keep(Comp::D2, dv);
            return A.zero();
        });
        delbar = graded_matrix(A, lay, [&](Comp k, const Vec& v) {
            Element dv = A.diff(k, v);
            if (k == Comp::D0) return keep(Comp::D01, dv);
            if (k == Comp::D10) return keep(Comp::D2, dv);
            return A.zero();
        });
        d = del + delbar;
        lam = graded_matrix(A, lay, [&](Comp k, const Vec& v) {
            Element r = A.zero();
            if (k == Comp::D2) r[Comp::D0] = A.lambda(v);
            return r;
        });
        lmap = graded_matrix(A, lay, [&](Comp k, const Vec& v) {
            Element r = A.zero();
            if (k == Comp::D0) r[Comp::D2] = A.lmap(v);
            return r;
        });
        const Cplx i1(0, 1);
        del_star = i1 * (lam * delbar - delbar * lam);
        delbar_star = -i1 * (lam * del - del * lam);
        d_star = i1 * (lam * (delbar - del) - (delbar - del) * lam);
        lap = d * d_star + d_star * d;
        lap_del = del * del_star + del_star * del;
        lap_delbar = delbar * delbar_star + delbar_star * delbar;
    }
};

/// Harmonic projector P onto Ker(lap) and Green's operator G with
/// P + lap G = id, computed by Hermitian eigendecomposition.
struct HarmonicData {
    Layout lay;
    Mat P, G;
    std::array<Mat, 4> basis;  // orthonormal bases of the kernel per component

    HarmonicData(const LozengeAlgebra& A, const Operators& ops) : lay(ops.lay) {
        if ((ops.d * ops.d).norm() > 1e-9 * (1.0 + ops.d.norm() * ops.d.norm()))
            throw lozenge_error("harmonic: d^2 != 0 for the current differential");
        Mat H = 0.5 * (ops.lap + ops.lap.adjoint());
        P = Mat::Zero(lay.total, lay.total);
        G = Mat::Zero(lay.total, lay.total);
        // lap preserves each component (it has pure degree 0 and respects the
        // (p,q)-splitting by the second-order identity), so work blockwise
        for (int k = 0; k < 4; ++k) {
            int n = A.dim(kComps[k]);
            if (n == 0) continue;
            Mat Hk = H.block(lay.off[k], lay.off[k], n, n);
            Eigen::SelfAdjointEigenSolver<Mat> es(Hk);
            double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
            double thr = 1e-9 * scale;
            std::vector<int> ker;
            for (int j = 0; j < n; ++j) {
                const Vec v = es.eigenvectors().col(j);
                if (es.eigenvalues()(j) < thr)
                    ker.push_back(j);
                else
                    G.block(lay.off[k], lay.off[k], n, n) +=
                        (v * v.adjoint()) / es.eigenvalues()(j);
            }
            basis[k].resize(n, static_cast<int>(ker.size()));
            for (size_t j = 0; j < ker.size(); ++j) {
                basis[k].col(static_cast<int>(j)) = es.eigenvectors().col(ker[j]);
                P.block(lay.off[k], lay.off[k], n, n) +=
                    es.eigenvectors().col(ker[j]) * es.eigenvectors().col(ker[j]).adjoint();
            }
        }
    }
};

}  // namespace wflow::loz
