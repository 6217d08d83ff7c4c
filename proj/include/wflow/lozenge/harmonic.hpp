#pragma once

#include "wflow/lozenge/operators.hpp"

namespace wflow::loz {

/// The harmonic subalgebra Ker(lap) with d = 0, the product projected back
/// onto the kernel, and omega, theta, trace inherited from the parent.
class HarmonicAlgebra final : public LozengeAlgebra {
public:
    using LozengeAlgebra::diff;
    using LozengeAlgebra::mul;
    using LozengeAlgebra::star;

    HarmonicAlgebra(AlgebraPtr parent, const Operators& ops)
        : parent_(std::move(parent)), h_(*parent_, ops) {
        for (int k = 0; k < 4; ++k) B_[k] = h_.basis[k];
        // omega and theta must be harmonic for the restriction to make sense
        if ((project(Comp::D2, parent_->omega2()) - parent_->omega2()).norm() > 1e-8)
            throw lozenge_error("harmonic: omega not harmonic");
        if ((project(Comp::D2, parent_->theta2()) - parent_->theta2()).norm() > 1e-8)
            throw lozenge_error("harmonic: theta not harmonic");
    }

    int dim(Comp k) const override { return static_cast<int>(B(k).cols()); }

    Element mul(Comp ka, const Vec& a, Comp kb, const Vec& b) const override {
        Element p = parent_->mul(ka, B(ka) * a, kb, B(kb) * b);
        Element r = zero();
        for (Comp k : kComps) r[k] = B(k).adjoint() * p[k];
        return r;
    }

    Vec star(Comp k, const Vec& a) const override {
        Comp out = k == Comp::D10 ? Comp::D01 : (k == Comp::D01 ? Comp::D10 : k);
        return B(out).adjoint() * parent_->star(k, B(k) * a);
    }

    Cplx trace(const Vec& a2) const override { return parent_->trace(B(Comp::D2) * a2); }
    Vec omega2() const override { return B(Comp::D2).adjoint() * parent_->omega2(); }
    Vec theta2() const override { return B(Comp::D2).adjoint() * parent_->theta2(); }
    Vec lambda(const Vec& a2) const override {
        return B(Comp::D0).adjoint() * parent_->lambda(B(Comp::D2) * a2);
    }
    Vec lmap(const Vec& a0) const override {
        return B(Comp::D2).adjoint() * parent_->lmap(B(Comp::D0) * a0);
    }
    Element diff(Comp, const Vec&) const override { return zero(); }
    Vec unit0() const override { return B(Comp::D0).adjoint() * parent_->unit0(); }

    /// Parent-space coordinates of a harmonic element.
    Element embed(const Element& e) const {
        Element r = parent_->zero();
        for (Comp k : kComps) r[k] = B(k) * e[k];
        return r;
    }

    /// Orthogonal projection of a parent element onto the harmonic part,
    /// in harmonic coordinates.
    Element restrict(const Element& e) const {
        Element r = zero();
        for (Comp k : kComps) r[k] = B(k).adjoint() * e[k];
        return r;
    }

    const AlgebraPtr& parent() const { return parent_; }

private:
    const Mat& B(Comp k) const { return B_[static_cast<int>(k)]; }

    Vec project(Comp k, const Vec& v) const { return B(k) * (B(k).adjoint() * v).eval(); }

    AlgebraPtr parent_;
    HarmonicData h_;
    std::array<Mat, 4> B_;
};

inline std::shared_ptr<HarmonicAlgebra> harmonic_algebra(AlgebraPtr parent) {
    Operators ops(*parent);
    return std::make_shared<HarmonicAlgebra>(std::move(parent), ops);
}

}  // namespace wflow::loz
