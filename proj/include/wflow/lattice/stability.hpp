#pragma once

#include <algorithm>
#include <cmath>

#include "wflow/lattice/kgroup.hpp"

namespace wflow::lat {

struct PolarizedLattice {
    FiniteLattice L;
    SimpleClasses cls;
    Polarization Z;

    PolarizedLattice(FiniteLattice lat, Polarization pol)
        : L(std::move(lat)), cls(L), Z(std::move(pol)) {
        if (static_cast<int>(Z.z.size()) != cls.count())
            throw lattice_error("polarization size mismatch with simple classes");
        Z.validate();
    }

    PolarizedLattice(const PolarizedLattice& o) : L(o.L), cls(o.cls), Z(o.Z) { cls.rebind(L); }
    PolarizedLattice(PolarizedLattice&& o) noexcept
        : L(std::move(o.L)), cls(std::move(o.cls)), Z(std::move(o.Z)) {
        cls.rebind(L);
    }
    PolarizedLattice& operator=(const PolarizedLattice& o) {
        L = o.L;
        cls = o.cls;
        Z = o.Z;
        cls.rebind(L);
        return *this;
    }
    PolarizedLattice& operator=(PolarizedLattice&& o) noexcept {
        L = std::move(o.L);
        cls = std::move(o.cls);
        Z = std::move(o.Z);
        cls.rebind(L);
        return *this;
    }

    KClass kclass(int a, int b) const { return cls.kclass(a, b); }
    double phase_of(int a, int b) const { return phase(Z, kclass(a, b)); }
};

/// Chain 0 = a_0 < ... < a_n = 1 with strictly increasing labels.
struct RFiltration {
    std::vector<int> chain;     // includes bottom and top
    std::vector<double> labels; // one per step, labels[k] for [chain[k], chain[k+1]]

    int steps() const { return static_cast<int>(labels.size()); }

    void validate(const FiniteLattice& L) const {
        if (chain.size() != labels.size() + 1 || chain.empty())
            throw lattice_error("filtration: chain/label length mismatch");
        if (chain.front() != L.bottom() || chain.back() != L.top())
            throw lattice_error("filtration: chain must run from bottom to top");
        for (size_t i = 0; i + 1 < chain.size(); ++i)
            if (!L.lt(chain[i], chain[i + 1]))
                throw lattice_error("filtration: chain not strictly increasing");
        for (size_t i = 0; i + 1 < labels.size(); ++i)
            if (!(labels[i] < labels[i + 1]))
                throw lattice_error("filtration: labels not strictly increasing");
    }
};

inline bool is_semistable(const PolarizedLattice& P) {
    if (P.L.size() == 1) return true;
    double top_phase = P.phase_of(P.L.bottom(), P.L.top());
    for (int x = 0; x < P.L.size(); ++x) {
        if (x == P.L.bottom()) continue;
        if (P.phase_of(P.L.bottom(), x) > top_phase + 1e-12) return false;
    }
    return true;
}

/// Semistability of an interval [a,b] with the inherited polarization.
inline bool is_semistable_interval(const PolarizedLattice& P, int a, int b) {
    if (a == b) return true;
    double top_phase = P.phase_of(a, b);
    for (int x : P.L.interval(a, b)) {
        if (x == a) continue;
        if (P.phase_of(a, x) > top_phase + 1e-12) return false;
    }
    return true;
}

/// Harder-Narasimhan filtration: unique chain with semistable subquotients of
/// strictly decreasing phase. Greedy maximal destabilizer; the result is
/// re-verified against the definition before returning.
inline RFiltration harder_narasimhan(const PolarizedLattice& P) {
    const FiniteLattice& L = P.L;
    RFiltration f;
    f.chain.push_back(L.bottom());
    int a = L.bottom();
    while (a != L.top()) {
        double best = -10.0;
        for (int x = 0; x < L.size(); ++x)
            if (L.lt(a, x)) best = std::max(best, P.phase_of(a, x));
        // maximal element among phase maximizers: closed under join
        int dest = -1;
        for (int x = 0; x < L.size(); ++x)
            if (L.lt(a, x) && P.phase_of(a, x) >= best - 1e-12)
                dest = (dest < 0) ? x : L.join(dest, x);
        f.chain.push_back(dest);
        f.labels.push_back(P.phase_of(a, dest));
        a = dest;
    }
    for (size_t k = 0; k + 1 < f.labels.size(); ++k)
        if (!(f.labels[k] > f.labels[k + 1] + 1e-12))
            throw lattice_error("harder_narasimhan: phases not strictly decreasing");
    for (size_t k = 0; k + 1 < f.chain.size(); ++k)
        if (!is_semistable_interval(P, f.chain[k], f.chain[k + 1]))
            throw lattice_error("harder_narasimhan: subquotient not semistable");
    return f;
}

/// Paracomplementedness: intervals spanned by labels less than 1 apart must be
/// complemented.
inline bool is_paracomplemented(const FiniteLattice& L, const RFiltration& f) {
    f.validate(L);
    int n = f.steps();
    for (int k = 1; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
            if (!(f.labels[l - 1] - f.labels[k - 1] < 1.0 - 1e-9)) continue;
            if (!is_complemented_interval(L, f.chain[k - 1], f.chain[l])) return false;
        }
    return true;
}

}  // namespace wflow::lat
