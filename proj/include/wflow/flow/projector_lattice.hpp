#pragma once

#include <set>

#include "wflow/flow/calculus.hpp"
#include "wflow/lattice/stability.hpp"
#include "wflow/lozenge/quiver_algebra.hpp"

namespace wflow::flow {

using loz::QuiverAlgebra;

/// Lattice of subrepresentation projectors of (A, alpha''), i.e. vertex-wise
/// orthogonal projectors p with (1-p) alpha'' p = 0, polarized by
/// Z([p,q]) = tau((omega - theta)(q - p)).
struct ProjectorLattice {
    lat::PolarizedLattice P;
    std::vector<std::vector<Mat>> proj;  // element -> per-vertex projector
    std::vector<Vec> elem0;              // element -> A0 coordinates

    int size() const { return P.L.size(); }
};

namespace detail {

inline constexpr double kSubspaceTol = 1e-8;

/// Orthogonal projector onto the column span.
inline Mat span_projector(const Mat& cols) {
    if (cols.cols() == 0) return Mat::Zero(cols.rows(), cols.rows());
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(cols);
    cod.setThreshold(1e-9);
    int r = static_cast<int>(cod.rank());
    Mat Q = cod.householderQ() * Mat::Identity(cols.rows(), r);
    return Q * Q.adjoint();
}

inline Mat kernel_projector(const Mat& m) {
    return Mat::Identity(m.cols(), m.cols()) - span_projector(m.adjoint());
}

inline bool subspace_leq(const Mat& p, const Mat& q) {
    return ((Mat::Identity(q.rows(), q.cols()) - q) * p).norm() < kSubspaceTol;
}

/// Smallest invariant collection containing the given subspaces: push images
/// forward along the arrows until stable.
inline void invariant_closure(const loz::QuiverData& q, const std::vector<Mat>& X,
                              std::vector<Mat>& P) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < q.arrows.size(); ++a) {
            int v = q.arrows[a].src, w = q.arrows[a].dst;
            Mat img = X[a] * P[v];
            if (((Mat::Identity(P[w].rows(), P[w].cols()) - P[w]) * img).norm() < kSubspaceTol)
                continue;
            Mat cols(P[w].rows(), P[w].cols() + img.cols());
            cols << P[w], img;
            P[w] = span_projector(cols);
            changed = true;
        }
    }
}

}  // namespace detail

inline ProjectorLattice projector_lattice(const QuiverAlgebra& A, const Vec& alpha01,
                                          int max_elements = 4096) {
    const loz::QuiverData& q = A.quiver();
    int nv = static_cast<int>(q.vertices.size());
    std::vector<Mat> X = A.blocks1(Comp::D01, alpha01);

    // candidate subspaces per vertex: 0, everything, and kernels/images of
    // words in alpha'' up to length 6
    std::vector<std::vector<Mat>> cands(nv);
    for (int v = 0; v < nv; ++v) {
        int d = q.vertices[v].dim;
        cands[v].push_back(Mat::Zero(d, d));
        cands[v].push_back(Mat::Identity(d, d));
    }
    struct Word {
        int src, dst;
        Mat m;
    };
    std::vector<Word> words;
    for (size_t a = 0; a < q.arrows.size(); ++a)
        words.push_back({q.arrows[a].src, q.arrows[a].dst, X[a]});
    for (int len = 1; len < 6; ++len) {
        size_t n = words.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].src == words[i].dst)
                    words.push_back({words[i].src, q.arrows[a].dst, X[a] * words[i].m});
        if (words.size() > 4000) break;
    }
    auto add_cand = [&](int v, const Mat& p) {
        for (const Mat& c : cands[v])
            if ((c - p).norm() < detail::kSubspaceTol) return;
        cands[v].push_back(p);
    };
    for (const Word& w : words) {
        add_cand(w.dst, detail::span_projector(w.m));
        add_cand(w.src, detail::kernel_projector(w.m));
    }

    // seed collections: invariant closures of a single candidate at a single
    // vertex; then close the set under vertex-wise meet and join
    std::vector<std::vector<Mat>> elems;
    auto add_elem = [&](const std::vector<Mat>& P) {
        for (const auto& e : elems) {
            double diff = 0;
            for (int v = 0; v < nv; ++v) diff += (e[v] - P[v]).norm();
            if (diff < detail::kSubspaceTol) return;
        }
        elems.push_back(P);
        if (static_cast<int>(elems.size()) > max_elements)
            throw flow_error("projector_lattice: enumeration overflow");
    };
    std::vector<Mat> zero(nv), full(nv);
    for (int v = 0; v < nv; ++v) {
        int d = q.vertices[v].dim;
        zero[v] = Mat::Zero(d, d);
        full[v] = Mat::Identity(d, d);
    }
    add_elem(zero);
    add_elem(full);
    for (int v = 0; v < nv; ++v)
        for (const Mat& c : cands[v]) {
            std::vector<Mat> P = zero;
            P[v] = c;
            detail::invariant_closure(q, X, P);
            add_elem(P);
        }
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            std::vector<Mat> mee(nv), jor(nv);
            for (int v = 0; v < nv; ++v) {
                Mat cols(elems[i][v].rows(), 2 * elems[i][v].cols());
                cols << elems[i][v], elems[j][v];
                jor[v] = detail::span_projector(cols);
                // intersection = complement of the span of the complements
                Mat I = full[v];
                Mat ccols(I.rows(), 2 * I.cols());
                ccols << (I - elems[i][v]), (I - elems[j][v]);
                mee[v] = I - detail::span_projector(ccols);
            }
            add_elem(mee);
            add_elem(jor);
        }

    lat::FiniteLattice L = lat::FiniteLattice::from_leq(
        static_cast<int>(elems.size()), [&](int i, int j) {
            for (int v = 0; v < nv; ++v)
                if (!detail::subspace_leq(elems[i][v], elems[j][v])) return false;
            return true;
        });

    lat::SimpleClasses cls(L);
    std::vector<Cplx> zval(cls.count(), Cplx(0, 0));
    std::vector<bool> seen(cls.count(), false);
    for (int a = 0; a < L.size(); ++a)
        for (int b : L.upper_covers(a)) {
            Cplx z = 0;
            for (int v = 0; v < nv; ++v) {
                double dd = std::real((elems[b][v] - elems[a][v]).trace());
                z += q.vertices[v].mass * Cplx(dd, q.vertices[v].rho * dd);
            }
            int c = cls.class_of_cover(a, b);
            if (seen[c]) {
                if (std::abs(z - zval[c]) > 1e-8 * (1.0 + std::abs(z)))
                    throw flow_error("projector_lattice: polarization not class-constant");
            } else {
                zval[c] = z;
                seen[c] = true;
            }
        }
    lat::Polarization Z;
    Z.z = std::move(zval);

    ProjectorLattice out{lat::PolarizedLattice(std::move(L), std::move(Z)), {}, {}};
    for (const auto& e : elems) {
        out.proj.push_back(e);
        out.elem0.push_back(A.from_blocks0(e));
    }
    return out;
}

}  // namespace wflow::flow
