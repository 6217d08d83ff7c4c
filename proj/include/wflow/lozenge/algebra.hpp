#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <memory>

#include "wflow/lozenge/quiver.hpp"

namespace wflow::loz {

using Cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Graded components: degree 0, the two halves of degree 1, and degree 2.
enum class Comp { D0 = 0, D10 = 1, D01 = 2, D2 = 3 };
constexpr std::array<Comp, 4> kComps{Comp::D0, Comp::D10, Comp::D01, Comp::D2};

inline int degree(Comp c) {
    switch (c) {
        case Comp::D0: return 0;
        case Comp::D10:
        case Comp::D01: return 1;
        case Comp::D2: return 2;
    }
    return 0;
}

/// General element: coordinate vector in each component. Coordinates are
/// orthonormal for the algebra's inner products.
struct Element {
    std::array<Vec, 4> c;

    Vec& operator[](Comp k) { return c[static_cast<int>(k)]; }
    const Vec& operator[](Comp k) const { return c[static_cast<int>(k)]; }

    Element& operator+=(const Element& o) {
        for (int k = 0; k < 4; ++k) {
            if (o.c[k].size() == 0) continue;
            if (c[k].size() == 0)
                c[k] = o.c[k];
            else
                c[k] += o.c[k];
        }
        return *this;
    }
    Element operator+(const Element& o) const {
        Element r = *this;
        r += o;
        return r;
    }
    Element operator*(Cplx s) const {
        Element r = *this;
        for (auto& v : r.c) v *= s;
        return r;
    }
    Element operator-(const Element& o) const { return *this + o * Cplx(-1.0); }

    double norm() const {
        double n2 = 0;
        for (const auto& v : c) n2 += v.squaredNorm();
        return std::sqrt(n2);
    }
};

/// A finite-dimensional lozenge algebra presented through orthonormal
/// coordinates on its four graded components. Implementations: the algebra of
/// a quiver, its harmonic subalgebra, and the rescaled algebra used by the
/// asymptotic construction.
class LozengeAlgebra {
public:
    virtual ~LozengeAlgebra() = default;

    virtual int dim(Comp k) const = 0;

    /// Product of homogeneous elements; zero in degrees > 2.
    virtual Element mul(Comp ka, const Vec& a, Comp kb, const Vec& b) const = 0;
    /// Antilinear star. Maps D10 <-> D01, fixes D0 and D2 as components.
    virtual Vec star(Comp k, const Vec& a) const = 0;
    virtual Cplx trace(const Vec& a2) const = 0;
    virtual Vec omega2() const = 0;
    virtual Vec theta2() const = 0;
    virtual Vec lambda(const Vec& a2) const = 0;  // L^-1 : A2 -> A0
    virtual Vec lmap(const Vec& a0) const = 0;    // L : A0 -> A2, a -> omega a
    /// Differential applied to a homogeneous element (splits by bidegree).
    virtual Element diff(Comp k, const Vec& a) const = 0;
    virtual Vec unit0() const = 0;

    int total_dim() const {
        int n = 0;
        for (Comp k : kComps) n += dim(k);
        return n;
    }

    Element zero() const {
        Element e;
        for (Comp k : kComps) e[k] = Vec::Zero(dim(k));
        return e;
    }

    Element basis(Comp k, int i) const {
        Element e = zero();
        e[k](i) = 1.0;
        return e;
    }

    Element mul(const Element& a, const Element& b) const {
        Element r = zero();
        for (Comp ka : kComps)
            for (Comp kb : kComps) {
                if (degree(ka) + degree(kb) > 2) continue;
                if (a[ka].isZero(0) || b[kb].isZero(0)) continue;
                r += mul(ka, a[ka], kb, b[kb]);
            }
        return r;
    }

    Element star(const Element& a) const {
        Element r = zero();
        r[Comp::D0] = star(Comp::D0, a[Comp::D0]);
        r[Comp::D01] = star(Comp::D10, a[Comp::D10]);
        r[Comp::D10] = star(Comp::D01, a[Comp::D01]);
        r[Comp::D2] = star(Comp::D2, a[Comp::D2]);
        return r;
    }

    Element diff(const Element& a) const {
        Element r = zero();
        for (Comp k : kComps) {
            if (degree(k) == 2 || a[k].isZero(0)) continue;
            r += diff(k, a[k]);
        }
        return r;
    }

    /// Supercommutator [a,b] of homogeneous elements.
    Element supercomm(Comp ka, const Vec& a, Comp kb, const Vec& b) const {
        double sgn = (degree(ka) * degree(kb)) % 2 == 0 ? 1.0 : -1.0;
        return mul(ka, a, kb, b) - mul(kb, b, ka, a) * Cplx(sgn);
    }

    /// Inner products of the definition, computed from trace/star/product.
    /// Serves as the ground truth the orthonormal coordinates must reproduce.
    Cplx inner(Comp k, const Vec& a, const Vec& b) const {
        switch (k) {
            case Comp::D0: {
                Element p = mul(Comp::D2, lmap(star(Comp::D0, a)), Comp::D0, b);
                return trace(p[Comp::D2]);
            }
            case Comp::D10: {
                Element p = mul(Comp::D01, star(Comp::D10, a), Comp::D10, b);
                return Cplx(0, -1) * trace(p[Comp::D2]);
            }
            case Comp::D01: {
                Element p = mul(Comp::D10, star(Comp::D01, a), Comp::D01, b);
                return Cplx(0, 1) * trace(p[Comp::D2]);
            }
            case Comp::D2: {
                Vec la = lambda(a), lb = lambda(b);
                return inner(Comp::D0, la, lb);
            }
        }
        return 0.0;
    }

    /// lambda = tau(theta)/tau(omega), the normalization used by the flow.
    Cplx slope() const { return trace(theta2()) / trace(omega2()); }
};

using AlgebraPtr = std::shared_ptr<const LozengeAlgebra>;

}  // namespace wflow::loz
