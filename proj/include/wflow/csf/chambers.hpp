#pragma once

#include <cmath>
#include <vector>

#include "wflow/csf/cylinder.hpp"
#include "wflow/lattice/graph.hpp"
#include "wflow/lattice/weight.hpp"

namespace wflow::csf {

/// Wall polynomials for the 5-cycle with three arrows one way and two the
/// other (sign pattern +,-,-,+,- up to symmetry). The walls D1 = 0, D2 = 0
/// separate the three chambers of the mass-parameter space.
inline double wall_d1(const std::vector<double>& m) {
    return m[0] * m[3] + m[2] * m[4] + 2 * m[3] * m[4] - m[0] * m[1];
}

inline double wall_d2(const std::vector<double>& m) {
    return m[1] * m[4] + m[0] * m[2] + 2 * m[0] * m[1] - m[3] * m[4];
}

/// Vertex heights of the weight grading on the ideal lattice of the cycle
/// graph (brute-force: maximal-chain search over all closed vertex subsets).
inline std::vector<double> vertex_heights(const lat::OrientedCycleGraph& g) {
    lat::IdealLattice I = lat::build_ideal_lattice(g.to_graph());
    lat::WeightFiltrationResult wf = lat::weight_filtration(I.P);
    auto sv = I.step_vertices(wf.filtration);
    std::vector<double> h(g.size(), 0.0);
    for (size_t k = 0; k < sv.size(); ++k)
        for (int v : sv[k]) h[v] = wf.filtration.labels[k];
    return h;
}

/// Predicted decay exponents: y_i ~ t^{-gap_i} where gap_i is the weight
/// difference across the edge at puncture i, so v_i = log(t y_i) drifts
/// linearly at rate 1 - gap_i (zero exactly when the edge has gap 1).
inline std::vector<double> predicted_v_rates(const lat::OrientedCycleGraph& g) {
    std::vector<double> h = vertex_heights(g);
    int n = g.size();
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = 1.0 - std::abs(h[i] - h[(i + 1) % n]);
    return r;
}

/// Bisection for the wall crossing D(m_a + tau (m_b - m_a)) = 0; requires a
/// sign change of the chosen wall polynomial between the endpoints.
inline std::vector<double> wall_point(const std::vector<double>& ma, const std::vector<double>& mb,
                                      double (*D)(const std::vector<double>&)) {
    auto at = [&](double tau) {
        std::vector<double> m(ma.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + tau * (mb[i] - ma[i]);
        return m;
    };
    double lo = 0.0, hi = 1.0, flo = D(at(lo));
    if (flo * D(at(hi)) > 0) throw csf_error("wall_point: no sign change along the segment");
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        (D(at(mid)) * flo > 0 ? lo : hi) = mid;
    }
    return at(0.5 * (lo + hi));
}

}  // namespace wflow::csf
