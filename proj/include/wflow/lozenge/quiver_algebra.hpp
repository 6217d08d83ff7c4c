#pragma once

#include <vector>

#include "wflow/lozenge/algebra.hpp"

namespace wflow::loz {

/// The lozenge algebra of a quiver. Components:
///   A0   = products of End(E_v), A2 = omega * A0;
///   A01  = sum over arrows a: v->w of Hom(E_v, E_w), A10 its star image.
/// Degree-2 elements are stored through Lambda, i.e. as A0 block collections.
/// Coordinates are vec'd blocks scaled by sqrt(mass), which makes all four
/// inner products of the definition equal to the standard one.
namespace detail {
constexpr int pair_code(Comp a, Comp b) { return static_cast<int>(a) * 4 + static_cast<int>(b); }
}  // namespace detail

class QuiverAlgebra final : public LozengeAlgebra {
public:
    using LozengeAlgebra::diff;
    using LozengeAlgebra::mul;
    using LozengeAlgebra::star;

    explicit QuiverAlgebra(QuiverData q) : q_(std::move(q)) {
        q_.validate();
        int nv = static_cast<int>(q_.vertices.size());
        off0_.resize(nv);
        int o = 0;
        for (int v = 0; v < nv; ++v) {
            off0_[v] = o;
            o += q_.vertices[v].dim * q_.vertices[v].dim;
        }
        n0_ = o;
        int na = static_cast<int>(q_.arrows.size());
        offa_.resize(na);
        o = 0;
        for (int a = 0; a < na; ++a) {
            offa_[a] = o;
            o += q_.vertices[q_.arrows[a].src].dim * q_.vertices[q_.arrows[a].dst].dim;
        }
        n1_ = o;
        twist_ = zero();
        theta_ = default_theta();
    }

    const QuiverData& quiver() const { return q_; }

    int dim(Comp k) const override {
        return (k == Comp::D10 || k == Comp::D01) ? n1_ : n0_;
    }

    // --- block <-> coordinate conversion -----------------------------------

    std::vector<Mat> blocks0(const Vec& a) const {
        std::vector<Mat> out;
        for (size_t v = 0; v < q_.vertices.size(); ++v) {
            int d = q_.vertices[v].dim;
            Mat m(d, d);
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i) m(i, j) = a(off0_[v] + j * d + i);
            out.push_back(m / std::sqrt(q_.vertices[v].mass));
        }
        return out;
    }

    Vec from_blocks0(const std::vector<Mat>& blocks) const {
        Vec a = Vec::Zero(n0_);
        for (size_t v = 0; v < q_.vertices.size(); ++v) {
            int d = q_.vertices[v].dim;
            double s = std::sqrt(q_.vertices[v].mass);
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i) a(off0_[v] + j * d + i) = s * blocks[v](i, j);
        }
        return a;
    }

    // Arrow blocks: D01 stores d_w x d_v (Hom(E_v,E_w)), D10 stores d_v x d_w.
    std::vector<Mat> blocks1(Comp k, const Vec& a) const {
        std::vector<Mat> out;
        for (size_t ar = 0; ar < q_.arrows.size(); ++ar) {
            int dv = q_.vertices[q_.arrows[ar].src].dim;
            int dw = q_.vertices[q_.arrows[ar].dst].dim;
            int rows = (k == Comp::D01) ? dw : dv;
            int cols = (k == Comp::D01) ? dv : dw;
            Mat m(rows, cols);
            for (int j = 0; j < cols; ++j)
                for (int i = 0; i < rows; ++i) m(i, j) = a(offa_[ar] + j * rows + i);
            out.push_back(m / std::sqrt(q_.vertices[q_.arrows[ar].src].mass));
        }
        return out;
    }

    Vec from_blocks1(Comp k, const std::vector<Mat>& blocks) const {
        Vec a = Vec::Zero(n1_);
        for (size_t ar = 0; ar < q_.arrows.size(); ++ar) {
            double s = std::sqrt(q_.vertices[q_.arrows[ar].src].mass);
            const Mat& m = blocks[ar];
            (void)k;
            for (int j = 0; j < m.cols(); ++j)
                for (int i = 0; i < m.rows(); ++i) a(offa_[ar] + j * m.rows() + i) = s * m(i, j);
        }
        return a;
    }

    // --- algebra operations -------------------------------------------------

    Element mul(Comp ka, const Vec& a, Comp kb, const Vec& b) const override {
        Element r = zero();
        if (degree(ka) + degree(kb) > 2) return r;
        auto at0 = [&](const Vec& v) { return blocks0(v); };
        using detail::pair_code;
        switch (pair_code(ka, kb)) {
            case pair_code(Comp::D0, Comp::D0): {
                auto A = at0(a), B = at0(b);
                for (size_t v = 0; v < A.size(); ++v) A[v] = A[v] * B[v];
                r[Comp::D0] = from_blocks0(A);
                break;
            }
            case pair_code(Comp::D0, Comp::D2): {
                auto A = at0(a), B = at0(b);
                for (size_t v = 0; v < A.size(); ++v) A[v] = A[v] * B[v];
                r[Comp::D2] = from_blocks0(A);
                break;
            }
            case pair_code(Comp::D2, Comp::D0): {
                auto A = at0(a), B = at0(b);
                for (size_t v = 0; v < A.size(); ++v) A[v] = A[v] * B[v];
                r[Comp::D2] = from_blocks0(A);
                break;
            }
            case pair_code(Comp::D0, Comp::D01): {
                auto A = at0(a);
                auto X = blocks1(Comp::D01, b);
                for (size_t ar = 0; ar < X.size(); ++ar) X[ar] = A[q_.arrows[ar].dst] * X[ar];
                r[Comp::D01] = from_blocks1(Comp::D01, X);
                break;
            }
            case pair_code(Comp::D01, Comp::D0): {
                auto X = blocks1(Comp::D01, a);
                auto B = at0(b);
                for (size_t ar = 0; ar < X.size(); ++ar) X[ar] = X[ar] * B[q_.arrows[ar].src];
                r[Comp::D01] = from_blocks1(Comp::D01, X);
                break;
            }
            case pair_code(Comp::D0, Comp::D10): {
                auto A = at0(a);
                auto Y = blocks1(Comp::D10, b);
                for (size_t ar = 0; ar < Y.size(); ++ar) Y[ar] = A[q_.arrows[ar].src] * Y[ar];
                r[Comp::D10] = from_blocks1(Comp::D10, Y);
                break;
            }
            case pair_code(Comp::D10, Comp::D0): {
                auto Y = blocks1(Comp::D10, a);
                auto B = at0(b);
                for (size_t ar = 0; ar < Y.size(); ++ar) Y[ar] = Y[ar] * B[q_.arrows[ar].dst];
                r[Comp::D10] = from_blocks1(Comp::D10, Y);
                break;
            }
            case pair_code(Comp::D10, Comp::D01): {
                // Lambda(y x) at the arrow source: -i sum y_a x_a
                auto Y = blocks1(Comp::D10, a);
                auto X = blocks1(Comp::D01, b);
                auto Z = zero_blocks0();
                for (size_t ar = 0; ar < Y.size(); ++ar)
                    Z[q_.arrows[ar].src] += Cplx(0, -1) * (Y[ar] * X[ar]);
                r[Comp::D2] = from_blocks0(Z);
                break;
            }
            case pair_code(Comp::D01, Comp::D10): {
                // Lambda(x y) at the arrow target: +i (m_src/m_dst) sum x_a y_a
                auto X = blocks1(Comp::D01, a);
                auto Y = blocks1(Comp::D10, b);
                auto Z = zero_blocks0();
                for (size_t ar = 0; ar < X.size(); ++ar) {
                    double w = q_.vertices[q_.arrows[ar].src].mass /
                               q_.vertices[q_.arrows[ar].dst].mass;
                    Z[q_.arrows[ar].dst] += Cplx(0, w) * (X[ar] * Y[ar]);
                }
                r[Comp::D2] = from_blocks0(Z);
                break;
            }
            default:
                break;  // D10*D10, D01*D01 and everything else vanish
        }
        return r;
    }

    Vec star(Comp k, const Vec& a) const override {
        if (k == Comp::D0 || k == Comp::D2) {
            auto A = blocks0(a);
            for (auto& m : A) m = m.adjoint().eval();
            return from_blocks0(A);
        }
        auto A = blocks1(k, a);
        for (auto& m : A) m = m.adjoint().eval();
        return from_blocks1(k == Comp::D01 ? Comp::D10 : Comp::D01, A);
    }

    Cplx trace(const Vec& a2) const override {
        auto Z = blocks0(a2);
        Cplx t = 0;
        for (size_t v = 0; v < Z.size(); ++v) t += q_.vertices[v].mass * Z[v].trace();
        return t;
    }

    Vec omega2() const override {
        auto Z = zero_blocks0();
        for (size_t v = 0; v < Z.size(); ++v) Z[v].setIdentity();
        return from_blocks0(Z);
    }

    Vec theta2() const override { return theta_; }

    Vec lambda(const Vec& a2) const override { return a2; }
    Vec lmap(const Vec& a0) const override { return a0; }

    Element diff(Comp k, const Vec& a) const override {
        if (!has_twist_) return zero();
        // d = [twist, .] (graded commutator); the base differential is zero
        Element ae = zero();
        ae[k] = a;
        Element left = LozengeAlgebra::mul(twist_, ae);
        Element right = LozengeAlgebra::mul(ae, twist_);
        double sgn = degree(k) % 2 == 0 ? -1.0 : 1.0;
        return left + right * Cplx(sgn);
    }

    Vec unit0() const override { return omega2(); }

    /// The representation matrices of the quiver as an element of A01.
    Vec rep01() const {
        std::vector<Mat> X;
        for (const auto& ar : q_.arrows) X.push_back(ar.alpha);
        return from_blocks1(Comp::D01, X);
    }

    /// alpha = alpha'' - (alpha'')^*, the anti-self-adjoint degree-1 element.
    Element rep_connection() const {
        Element e = zero();
        e[Comp::D01] = rep01();
        e[Comp::D10] = -star(Comp::D01, rep01());
        return e;
    }

    /// Copy with the differential twisted by [alpha, .].
    std::shared_ptr<QuiverAlgebra> twisted(const Element& alpha) const {
        auto r = std::make_shared<QuiverAlgebra>(*this);
        r->twist_ = has_twist_ ? twist_ + alpha : alpha;
        r->has_twist_ = true;
        return r;
    }

    /// Copy with curvature overridden (used when the differential twist
    /// absorbs theta).
    std::shared_ptr<QuiverAlgebra> with_theta(Vec th) const {
        auto r = std::make_shared<QuiverAlgebra>(*this);
        r->theta_ = std::move(th);
        return r;
    }

private:
    std::vector<Mat> zero_blocks0() const {
        std::vector<Mat> out;
        for (const auto& v : q_.vertices) out.push_back(Mat::Zero(v.dim, v.dim));
        return out;
    }

    Vec default_theta() const {
        auto Z = zero_blocks0();
        for (size_t v = 0; v < Z.size(); ++v)
            Z[v] = Cplx(0, -q_.vertices[v].rho) * Mat::Identity(q_.vertices[v].dim, q_.vertices[v].dim);
        return from_blocks0(Z);
    }

    QuiverData q_;
    std::vector<int> off0_, offa_;
    int n0_ = 0, n1_ = 0;
    Element twist_;
    bool has_twist_ = false;
    Vec theta_;
};

/// Free-input curvature helper: prescribe per-vertex slopes directly.
inline QuiverData with_rho(QuiverData q, const std::vector<double>& slopes) {
    if (slopes.size() != q.vertices.size())
        throw lozenge_error("with_rho: one slope per vertex required");
    for (size_t v = 0; v < q.vertices.size(); ++v) q.vertices[v].rho = slopes[v];
    return q;
}

}  // namespace wflow::loz
