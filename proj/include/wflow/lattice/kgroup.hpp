#pragma once

#include <complex>
#include <map>
#include <numeric>
#include <utility>

#include "wflow/lattice/lattice.hpp"

namespace wflow::lat {

using KClass = std::vector<int>;  // multiplicities per simple-interval class

/// Partition of the cover pairs of a lattice into projectivity classes.
/// Two covers are identified when one is a transpose of the other
/// ([a, a v b] ~ [a ^ b, b]); simple classes are the connected components.
class SimpleClasses {
public:
    explicit SimpleClasses(const FiniteLattice& L) : L_(&L) {
        std::vector<std::pair<int, int>> covers;
        for (int a = 0; a < L.size(); ++a)
            for (int b : L.upper_covers(a)) covers.emplace_back(a, b);
        int m = static_cast<int>(covers.size());
        std::vector<int> parent(m);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int i) {
            while (parent[i] != i) i = parent[i] = parent[parent[i]];
            return i;
        };
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < i; ++j) {
                auto [c, d] = covers[i];
                auto [e, f] = covers[j];
                // transpose: [c,d] lower transpose of [e,f] or vice versa
                bool t1 = (L.meet(d, e) == c && L.join(d, e) == f);
                bool t2 = (L.meet(f, c) == e && L.join(f, c) == d);
                if (t1 || t2) parent[find(i)] = find(j);
            }
        std::map<int, int> relabel;
        for (int i = 0; i < m; ++i) {
            int r = find(i);
            if (!relabel.count(r)) {
                int id = static_cast<int>(relabel.size());
                relabel[r] = id;
            }
            cover_class_[covers[i]] = relabel[r];
        }
        n_classes_ = static_cast<int>(relabel.size());
    }

    int count() const { return n_classes_; }

    // re-point at the lattice after its owner is copied or moved
    void rebind(const FiniteLattice& L) { L_ = &L; }

    int class_of_cover(int a, int b) const {
        auto it = cover_class_.find({a, b});
        if (it == cover_class_.end()) throw lattice_error("not a cover pair");
        return it->second;
    }

    /// Composition-factor multiplicities of [a,b], accumulated along any
    /// maximal chain (independent of the chain by Jordan-Holder-Dedekind).
    KClass kclass(int a, int b) const {
        const FiniteLattice& L = *L_;
        if (!L.leq(a, b)) throw lattice_error("kclass: requires a <= b");
        KClass out(n_classes_, 0);
        int x = a;
        while (x != b) {
            int next = -1;
            for (int c : L.upper_covers(x))
                if (L.leq(c, b)) { next = c; break; }
            if (next < 0) throw lattice_error("kclass: chain walk failed");
            out[class_of_cover(x, next)] += 1;
            x = next;
        }
        return out;
    }

private:
    const FiniteLattice* L_;
    std::map<std::pair<int, int>, int> cover_class_;
    int n_classes_ = 0;
};

inline KClass kclass_add(const KClass& a, const KClass& b) {
    KClass out(a);
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline bool kclass_is_zero(const KClass& c) {
    for (int v : c)
        if (v != 0) return false;
    return true;
}

/// Central charge: one complex value per simple class, extended additively.
struct Polarization {
    std::vector<std::complex<double>> z;

    std::complex<double> operator()(const KClass& c) const {
        std::complex<double> s = 0;
        for (size_t i = 0; i < c.size(); ++i) s += static_cast<double>(c[i]) * z[i];
        return s;
    }

    bool is_real() const {
        for (auto v : z)
            if (v.imag() != 0.0) return false;
        return true;
    }

    /// K+ positivity certificate: checked on simple classes (sufficient by additivity).
    void validate() const {
        for (auto v : z)
            if (!(v.real() > 0.0)) throw lattice_error("polarization: Re Z(simple) must be > 0");
    }
};

inline double phase(const Polarization& Z, const KClass& c) {
    if (kclass_is_zero(c)) throw lattice_error("phase of zero class");
    std::complex<double> v = Z(c);
    if (!(v.real() > 0.0)) throw lattice_error("phase: class outside right half-plane");
    return std::atan2(v.imag(), v.real());
}

}  // namespace wflow::lat
