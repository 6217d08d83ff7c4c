#pragma once

#include <cmath>
#include <cstdint>

#include "wflow/lattice/stability.hpp"

namespace wflow::lat {

/// Directed graph with positive vertex masses. Lattice elements are the
/// closed vertex subsets (no arrows leading out).
struct DirectedGraph {
    std::vector<double> mass;                 // one per vertex
    std::vector<std::pair<int, int>> edges;   // v -> w

    int vertices() const { return static_cast<int>(mass.size()); }

    void validate() const {
        if (vertices() == 0) throw lattice_error("graph: no vertices");
        if (vertices() > 20) throw lattice_error("graph: too many vertices for enumeration");
        for (double m : mass)
            if (!(m > 0.0)) throw lattice_error("graph: vertex masses must be positive");
        for (auto [v, w] : edges)
            if (v < 0 || w < 0 || v >= vertices() || w >= vertices() || v == w)
                throw lattice_error("graph: bad edge");
    }

    bool closed(uint32_t s) const {
        for (auto [v, w] : edges)
            if ((s >> v & 1u) && !(s >> w & 1u)) return false;
        return true;
    }
};

/// Oriented n-cycle: segment masses m_i and puncture signs eps_i.
/// eps[i] = +1 puts the arrow from segment i to segment (i+1) mod n.
struct OrientedCycleGraph {
    std::vector<double> m;
    std::vector<int> eps;

    int size() const { return static_cast<int>(m.size()); }

    void validate() const {
        if (size() < 2 || eps.size() != m.size())
            throw lattice_error("cycle graph: need n >= 2 segments with matching signs");
        for (double v : m)
            if (!(v > 0.0)) throw lattice_error("cycle graph: masses must be positive");
        bool has_pos = false, has_neg = false;
        for (int e : eps) (e > 0 ? has_pos : has_neg) = true;
        if (!(has_pos && has_neg))
            throw lattice_error("cycle graph: signs must not all be equal");
    }

    DirectedGraph to_graph() const {
        validate();
        DirectedGraph g;
        g.mass = m;
        int n = size();
        for (int i = 0; i < n; ++i) {
            if (eps[i] > 0)
                g.edges.emplace_back(i, (i + 1) % n);
            else
                g.edges.emplace_back((i + 1) % n, i);
        }
        return g;
    }
};

struct IdealLattice {
    PolarizedLattice P;
    std::vector<uint32_t> elem_mask;       // element id -> vertex subset
    std::vector<int> class_vertex;         // simple class id -> vertex

    /// Vertex added at each step of a filtration chain in this lattice.
    std::vector<std::vector<int>> step_vertices(const RFiltration& f) const {
        std::vector<std::vector<int>> out;
        for (size_t k = 0; k + 1 < f.chain.size(); ++k) {
            uint32_t diff = elem_mask[f.chain[k + 1]] & ~elem_mask[f.chain[k]];
            std::vector<int> vs;
            for (int v = 0; v < 32; ++v)
                if (diff >> v & 1u) vs.push_back(v);
            out.push_back(std::move(vs));
        }
        return out;
    }
};

inline IdealLattice build_ideal_lattice(const DirectedGraph& g) {
    g.validate();
    int nv = g.vertices();
    std::vector<uint32_t> masks;
    for (uint32_t s = 0; s < (1u << nv); ++s)
        if (g.closed(s)) masks.push_back(s);
    FiniteLattice L = FiniteLattice::from_leq(
        static_cast<int>(masks.size()),
        [&](int i, int j) { return (masks[i] & ~masks[j]) == 0; });
    SimpleClasses cls(L);
    // each cover adds exactly one vertex; classes correspond to vertices
    std::vector<int> class_vertex(cls.count(), -1);
    for (int a = 0; a < L.size(); ++a)
        for (int b : L.upper_covers(a)) {
            uint32_t diff = masks[b] & ~masks[a];
            if (__builtin_popcount(diff) != 1)
                throw lattice_error("ideal lattice: cover adds more than one vertex");
            int v = __builtin_ctz(diff);
            int c = cls.class_of_cover(a, b);
            if (class_vertex[c] >= 0 && class_vertex[c] != v)
                throw lattice_error("ideal lattice: inconsistent simple classes");
            class_vertex[c] = v;
        }
    Polarization Z;
    Z.z.resize(cls.count());
    for (int c = 0; c < cls.count(); ++c)
        Z.z[c] = {g.mass[class_vertex[c]], 0.0};  // phase-0 convention
    return IdealLattice{PolarizedLattice(std::move(L), std::move(Z)),
                        std::move(masks), std::move(class_vertex)};
}

enum class Chamber { LEFT, MIDDLE, RIGHT, WALL1, WALL2 };

struct WallReport {
    double D1 = 0, D2 = 0;
    Chamber chamber = Chamber::MIDDLE;
};

/// Chamber structure for the oriented 5-cycle:
///   D1 = m1 m4 + m3 m5 + 2 m4 m5 - m1 m2
///   D2 = m2 m5 + m1 m3 + 2 m1 m2 - m4 m5
inline WallReport walls_5cycle(const std::vector<double>& m) {
    if (m.size() != 5) throw lattice_error("walls_5cycle: need 5 masses");
    for (double v : m)
        if (!(v > 0.0)) throw lattice_error("walls_5cycle: masses must be positive");
    double n2 = 0;
    for (double v : m) n2 += v * v;
    double tol = 1e-9 * n2;
    WallReport r;
    r.D1 = m[0] * m[3] + m[2] * m[4] + 2 * m[3] * m[4] - m[0] * m[1];
    r.D2 = m[1] * m[4] + m[0] * m[2] + 2 * m[0] * m[1] - m[3] * m[4];
    if (std::abs(r.D1) < tol)
        r.chamber = Chamber::WALL1;
    else if (std::abs(r.D2) < tol)
        r.chamber = Chamber::WALL2;
    else if (r.D1 < 0)
        r.chamber = Chamber::LEFT;
    else if (r.D2 < 0)
        r.chamber = Chamber::RIGHT;
    else
        r.chamber = Chamber::MIDDLE;
    return r;
}

/// The reference five-cycle orientation (arrows 1->2, 3->2, 4->3, 4->5, 1->5).
inline OrientedCycleGraph five_cycle(const std::vector<double>& m) {
    return OrientedCycleGraph{m, {+1, -1, -1, +1, -1}};
}

}  // namespace wflow::lat
