#pragma once

#include <limits>

#include "wflow/flow/integrate.hpp"
#include "wflow/flow/projector_lattice.hpp"

namespace wflow::flow {

enum class Stability { POLYSTABLE, SEMISTABLE_NOT_POLY, UNSTABLE };

struct StabilityVerdict {
    Stability classification = Stability::POLYSTABLE;
    int witness = -1;                     // destabilizing lattice element, if unstable
    std::vector<Mat> witness_projector;   // its vertex-wise projectors
    double fixed_point_residual = std::numeric_limits<double>::quiet_NaN();
    double phase = 0;                     // arctan(i lambda)
    bool horizon_warning = false;         // heuristic: flow undecided at max horizon
};

/// The anti-self-adjoint connection determined by the (0,1)-datum alpha''.
inline Element rep_connection(const LozengeAlgebra& A, const Vec& alpha01) {
    Element e = A.zero();
    e[Comp::D01] = alpha01;
    e[Comp::D10] = -A.star(Comp::D01, alpha01);
    return e;
}

/// Lattice-side classification: semistable iff no sub-projector of phase above
/// the total phase; polystable iff additionally the phase-maximal sublattice
/// L^phi is complemented.
inline Stability lattice_stability(const lat::PolarizedLattice& P, int* witness = nullptr) {
    const lat::FiniteLattice& L = P.L;
    if (L.size() == 1) return Stability::POLYSTABLE;
    double top_phase = P.phase_of(L.bottom(), L.top());
    bool semistable = true;
    for (int x = 0; x < L.size(); ++x) {
        if (x == L.bottom()) continue;
        if (P.phase_of(L.bottom(), x) > top_phase + 1e-9) semistable = false;
    }
    if (!semistable) {
        if (witness) {
            // maximal element among the phase maximizers (closed under join)
            double best = -10.0;
            for (int x = 0; x < L.size(); ++x)
                if (x != L.bottom()) best = std::max(best, P.phase_of(L.bottom(), x));
            int dest = -1;
            for (int x = 0; x < L.size(); ++x)
                if (x != L.bottom() && P.phase_of(L.bottom(), x) >= best - 1e-9)
                    dest = dest < 0 ? x : L.join(dest, x);
            *witness = dest;
        }
        return Stability::UNSTABLE;
    }
    std::vector<int> ids{L.bottom()};
    for (int x = 0; x < L.size(); ++x)
        if (x != L.bottom() && P.phase_of(L.bottom(), x) > top_phase - 1e-9) ids.push_back(x);
    auto [lphi, map] = L.sublattice(ids);
    (void)map;
    return lat::is_complemented(lphi) ? Stability::POLYSTABLE : Stability::SEMISTABLE_NOT_POLY;
}

/// King's criterion, checked on both sides: the projector lattice of
/// (A, alpha'') must be polystable of phase arctan(i lambda) exactly when the
/// metric flow started at h = 1 converges to a fixed point. Disagreement is a
/// consistency error.
inline StabilityVerdict king_test(const QuiverAlgebra& A, const Vec& alpha01) {
    ProjectorLattice PL = projector_lattice(A, alpha01);
    StabilityVerdict v;
    Cplx il = Cplx(0, 1) * A.slope();
    if (std::abs(il.imag()) > 1e-9 * (1.0 + std::abs(il)))
        throw flow_error("king_test: i lambda not real");
    v.phase = std::atan(il.real());

    int witness = -1;
    Stability lattice_side = lattice_stability(PL.P, &witness);
    if (witness >= 0) {
        v.witness = witness;
        v.witness_projector = PL.proj[witness];
    }

    Element alpha = rep_connection(A, alpha01);
    std::vector<double> samples;
    for (int k = 0; k <= 50; ++k) samples.push_back(std::pow(10.0, k / 10.0));
    Stability flow_side = Stability::SEMISTABLE_NOT_POLY;
    bool decided = false;
    double final_res = std::numeric_limits<double>::quiet_NaN();
    auto stop = [&](double t, const Vec& u, double res) {
        final_res = res;
        if (res < 1e-6) {
            flow_side = Stability::POLYSTABLE;
            decided = true;
            return true;
        }
        // converging and semistable runs keep ||u|| = O(log t); linear growth
        // marks a destabilizing direction (and must be caught before the
        // exponential eigenvalue spread of h drowns the residual in noise)
        if (t >= 2 && u.norm() > 5.0 + 3.0 * std::log(1.0 + t)) {
            flow_side = Stability::UNSTABLE;
            decided = true;
            return true;
        }
        return false;
    };
    integrate_metric_flow(A, alpha, A.unit0(), 1e5, samples, stop);
    if (!decided) v.horizon_warning = true;

    if (flow_side != lattice_side)
        throw flow_error("king_test: lattice and flow verdicts disagree");
    v.classification = lattice_side;
    if (v.classification == Stability::POLYSTABLE) v.fixed_point_residual = final_res;
    return v;
}

}  // namespace wflow::flow
