// Acceptance harness: one pass/fail line per criterion, exit 0 only if all
// pass. Each criterion is self-contained and re-derives its expected values
// from an independent oracle where one exists.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wflow/csf/chambers.hpp"
#include "wflow/csf/compare.hpp"
#include "wflow/csf/ode.hpp"
#include "wflow/csf/pde.hpp"
#include "wflow/flow/asymptotic.hpp"
#include "wflow/flow/integrate.hpp"
#include "wflow/flow/king.hpp"
#include "wflow/lattice/graph.hpp"
#include "wflow/lattice/weight.hpp"
#include "wflow/lozenge/operators.hpp"
#include "wflow/lozenge/quiver_algebra.hpp"

using namespace wflow;
using namespace wflow::flow;

namespace {

int failures = 0;

void report(int id, const char* desc, bool pass, double secs, const std::string& note = "") {
    std::printf("criterion %d: %s (%.1fs) %s%s%s\n", id, pass ? "PASS" : "FAIL", secs, desc,
                note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void run(int id, const char* desc, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    try {
        pass = body(note);
    } catch (const std::exception& e) {
        note = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, desc, pass, secs, note);
}

// ------------------------------------------------------------ shared bits ---

lat::DirectedGraph random_dag(std::mt19937& rng, int max_v) {
    std::uniform_int_distribution<int> nv_d(1, max_v);
    int nv = nv_d(rng);
    lat::DirectedGraph g;
    std::uniform_real_distribution<double> mass_d(0.2, 3.0);
    for (int i = 0; i < nv; ++i) g.mass.push_back(mass_d(rng));
    std::bernoulli_distribution edge_d(0.4);
    for (int v = 0; v < nv; ++v)
        for (int w = v + 1; w < nv; ++w)
            if (edge_d(rng)) g.edges.emplace_back(v, w);
    return g;
}

// exhaustive oracle: every bottom-to-top chain with semistable subquotients
// and strictly decreasing phases
std::vector<std::vector<int>> hn_chains_bruteforce(const lat::PolarizedLattice& P) {
    std::vector<std::vector<int>> found;
    std::vector<int> cur{P.L.bottom()};
    std::function<void()> rec = [&]() {
        int a = cur.back();
        if (a == P.L.top()) {
            for (size_t k = 0; k + 2 < cur.size(); ++k)
                if (!(P.phase_of(cur[k], cur[k + 1]) > P.phase_of(cur[k + 1], cur[k + 2]) + 1e-12))
                    return;
            for (size_t k = 0; k + 1 < cur.size(); ++k)
                if (!lat::is_semistable_interval(P, cur[k], cur[k + 1])) return;
            found.push_back(cur);
            return;
        }
        for (int x = 0; x < P.L.size(); ++x)
            if (P.L.lt(a, x)) {
                cur.push_back(x);
                rec();
                cur.pop_back();
            }
    };
    rec();
    return found;
}

loz::QuiverData a2_quiver(Cplx s, double m1, double m2, double r1, double r2) {
    loz::QuiverData q;
    q.vertices = {{1, m1, r1}, {1, m2, r2}};
    Eigen::MatrixXcd a(1, 1);
    a(0, 0) = s;
    q.arrows = {{0, 1, a}};
    return q;
}

loz::QuiverData thin_quiver(const lat::DirectedGraph& g) {
    loz::QuiverData q;
    for (double m : g.mass) q.vertices.push_back({1, m, 0.0});
    for (auto [v, w] : g.edges) {
        Eigen::MatrixXcd a(1, 1);
        a(0, 0) = 1.0;
        q.arrows.push_back({v, w, a});
    }
    return q;
}

Vec random_positive0(std::mt19937& rng, const loz::QuiverAlgebra& A, double spread) {
    std::normal_distribution<double> nd(0.0, spread);
    std::vector<Mat> B;
    for (const auto& v : A.quiver().vertices) {
        Mat M(v.dim, v.dim);
        for (int i = 0; i < v.dim; ++i)
            for (int j = 0; j < v.dim; ++j) M(i, j) = {nd(rng), nd(rng)};
        B.push_back((0.5 * (M + M.adjoint())).eval());
    }
    return exp0(A, A.from_blocks0(B));
}

std::vector<double> log_times(double lo, double hi, int per_decade = 20) {
    std::vector<double> out;
    int n = static_cast<int>(std::ceil(per_decade * std::log10(hi / lo)));
    for (int k = 0; k <= n; ++k) out.push_back(lo * std::pow(hi / lo, double(k) / n));
    return out;
}

std::vector<Vec> metric_of_gauge(const loz::QuiverAlgebra& A, const GaugeTrajectory& g) {
    std::vector<Vec> hs;
    for (const Vec& gv : g.states) {
        Vec gs = A.star(Comp::D0, gv);
        hs.push_back(A.mul(Comp::D0, gs, Comp::D0, gv)[Comp::D0]);
    }
    return hs;
}

// ------------------------------------------------------------- criteria -----

bool crit1(std::string& note) {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 200) {
        lat::IdealLattice I = lat::build_ideal_lattice(random_dag(rng, 6));
        if (I.P.L.size() > 64) continue;
        ++done;
        lat::RFiltration hn = lat::harder_narasimhan(I.P);
        auto chains = hn_chains_bruteforce(I.P);
        if (chains.size() != 1 || chains[0] != hn.chain) {
            note = "HN disagrees with exhaustive search";
            return false;
        }
        lat::WeightFiltrationResult wf = lat::weight_filtration(I.P);
        if (!lat::is_paracomplemented(I.P.L, wf.filtration)) {
            note = "weight filtration not paracomplemented";
            return false;
        }
        lat::detail::MLattice M = lat::detail::build_m_lattice(I.P, wf.filtration);
        if (!lat::detail::m_semistable_phase0(M)) {
            note = "M(a,lambda) not semistable of phase 0";
            return false;
        }
    }
    note = "200 instances";
    return true;
}

bool crit2(std::string& note) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> nv_d(2, 4), dim_d(1, 3);
    std::uniform_real_distribution<double> mass_d(0.5, 2.0), ent(-1.0, 1.0);
    double worst1 = 0, worst2 = 0;
    for (int inst = 0; inst < 100; ++inst) {
        // arrows only from the front half to the back half keep alpha^2 = 0,
        // so the twisted differential squares to zero at any vertex dimension
        // identity 2 additionally needs a valid differential (d^2 = 0, i.e.
        // alpha^2 central): scalar-unitary arrows keep it central at any
        // vertex dimension
        int nv = nv_d(rng);
        int cut = nv / 2;
        int d = dim_d(rng);
        loz::QuiverData q;
        for (int v = 0; v < nv; ++v) q.vertices.push_back({d, mass_d(rng), ent(rng)});
        std::uniform_int_distribution<int> src_d(0, cut - 1), dst_d(cut, nv - 1);
        int na = 1 + inst % 3;
        for (int a = 0; a < na; ++a) {
            int s = src_d(rng), t = dst_d(rng);
            Eigen::MatrixXcd m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) m(i, j) = {ent(rng), ent(rng)};
            Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
            q.arrows.push_back({s, t, (0.3 + std::abs(ent(rng))) * u});
        }
        auto A = std::make_shared<loz::QuiverAlgebra>(q);
        auto At = A->twisted(A->rep_connection());
        loz::Operators ops(*At);
        loz::Layout lay(*At);
        // Gram-matrix adjoint oracle, independent of the Kaehler construction
        Mat G = Mat::Zero(lay.total, lay.total);
        for (int k = 0; k < 4; ++k) {
            int n = At->dim(loz::kComps[k]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
                    ei(i) = 1;
                    ej(j) = 1;
                    G(lay.off[k] + i, lay.off[k] + j) = At->inner(loz::kComps[k], ei, ej);
                }
        }
        Mat Ginv = G.inverse();
        auto adj = [&](const Mat& M) { return (Ginv * M.adjoint() * G).eval(); };
        const Cplx i1(0, 1);
        Mat del_star_g = adj(ops.del);
        Mat lhs1 = del_star_g - i1 * (ops.lam * ops.delbar - ops.delbar * ops.lam);
        worst1 = std::max(worst1, lhs1.norm());
        Mat d_star_g = adj(ops.d), delbar_star_g = adj(ops.delbar);
        Mat lap_g = ops.d * d_star_g + d_star_g * ops.d;
        Mat lap_delbar_g = ops.delbar * delbar_star_g + delbar_star_g * ops.delbar;
        worst2 = std::max(worst2, (lap_g - 2.0 * lap_delbar_g).norm());
    }
    std::ostringstream ss;
    ss << "worst |del* - i[lam,delbar]| = " << worst1 << ", worst |lap - 2 lap_delbar| = "
       << worst2;
    note = ss.str();
    return worst1 < 1e-10 && worst2 < 1e-10;
}

bool crit3(std::string& note) {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> nv_d(2, 3), dim_d(1, 2), arr_d(1, 2);
    std::uniform_real_distribution<double> mass_d(0.5, 2.0), rho_d(-0.05, 0.05), ent(-1.0, 1.0);
    for (int inst = 0; inst < 100; ++inst) {
        int nv = nv_d(rng);
        loz::QuiverData q;
        for (int v = 0; v < nv; ++v) q.vertices.push_back({dim_d(rng), mass_d(rng), rho_d(rng)});
        std::uniform_int_distribution<int> vd(0, nv - 1);
        int na = arr_d(rng);
        for (int a = 0; a < na; ++a) {
            int s = vd(rng), t = vd(rng);
            if (s == t) continue;
            Eigen::MatrixXcd m(q.vertices[t].dim, q.vertices[s].dim);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) m(i, j) = {ent(rng), ent(rng)};
            q.arrows.push_back({s, t, m});
        }
        loz::QuiverAlgebra A(q);
        Element alpha = A.rep_connection();
        Vec g0 = random_positive0(rng, A, 0.4);
        // psd bump: h0 - g0 = sum of vertex-wise M M^dagger
        std::normal_distribution<double> nd(0.0, 0.3);
        std::vector<Mat> B;
        for (const auto& v : q.vertices) {
            Mat M(v.dim, v.dim);
            for (int i = 0; i < v.dim; ++i)
                for (int j = 0; j < v.dim; ++j) M(i, j) = {nd(rng), nd(rng)};
            B.push_back((M * M.adjoint()).eval());
        }
        Vec h0 = g0 + A.from_blocks0(B);
        if (!check_monotonicity(A, alpha, g0, h0, 50.0)) {
            note = "order violated at instance " + std::to_string(inst);
            return false;
        }
    }
    note = "100 instances to t = 50";
    return true;
}

bool crit4(std::string& note) {
    struct Case {
        loz::QuiverData q;
        Stability expect;
    };
    std::vector<Case> cases;
    // stable one-arrow representations (fixed point exists)
    for (auto [s, c] : std::vector<std::pair<double, double>>{
             {2.0, 1.0}, {1.0, 0.3}, {1.5, 0.5}, {0.7, 0.8}, {1.0, 1.2}, {3.0, 0.4}})
        cases.push_back({a2_quiver(s, 1.0, 1.0, c, -c), Stability::POLYSTABLE});
    for (auto [m1, m2] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {0.5, 1.5}})
        cases.push_back({a2_quiver(1.0, m1, m2, 0.5, -0.5 * m1 / m2), Stability::POLYSTABLE});
    // direct sum of stable pieces: polystable but not stable
    {
        loz::QuiverData q;
        q.vertices = {{1, 1.0, 1.0}, {1, 1.0, -1.0}, {1, 1.0, 1.0}, {1, 1.0, -1.0}};
        Eigen::MatrixXcd a(1, 1);
        a(0, 0) = 2.0;
        q.arrows = {{0, 1, a}, {2, 3, a}};
        cases.push_back({q, Stability::POLYSTABLE});
    }
    // decoupled vertices with equal slopes: direct sum of simples
    {
        loz::QuiverData q;
        q.vertices = {{1, 1.0, 0.0}, {1, 2.0, 0.0}};
        cases.push_back({q, Stability::POLYSTABLE});
    }
    // strictly semistable: equal slopes leave the middle element uncomplemented
    for (double s : {1.0, 0.5, 2.0})
        cases.push_back({a2_quiver(s, 1.0, 1.0, 0.0, 0.0), Stability::SEMISTABLE_NOT_POLY});
    cases.push_back({a2_quiver(1.0, 1.0, 3.0, 0.0, 0.0), Stability::SEMISTABLE_NOT_POLY});
    // thin five-cycles are phase-0 semistable with drifting weights
    cases.push_back(
        {thin_quiver(lat::five_cycle({1, 1, 1, 1, 1}).to_graph()), Stability::SEMISTABLE_NOT_POLY});
    cases.push_back({thin_quiver(lat::five_cycle({4, 4, 1, 0.25, 0.25}).to_graph()),
                     Stability::SEMISTABLE_NOT_POLY});
    // unstable: arrow tail has the lower slope, or decoupled distinct slopes
    for (double c : {1.0, 0.5, 0.2})
        cases.push_back({a2_quiver(1.0, 1.0, 1.0, -c, c), Stability::UNSTABLE});
    {
        loz::QuiverData q;
        q.vertices = {{1, 1.0, 1.0}, {1, 1.0, -1.0}};
        cases.push_back({q, Stability::UNSTABLE});
    }
    {
        // three-chain destabilized at the top vertex
        lat::DirectedGraph g;
        g.mass = {1.0, 1.0, 1.0};
        g.edges = {{0, 1}, {1, 2}};
        loz::QuiverData q = thin_quiver(g);
        q.vertices[0].rho = -0.5;
        q.vertices[2].rho = 0.5;
        cases.push_back({q, Stability::UNSTABLE});
    }

    int n_poly = 0;
    for (size_t i = 0; i < cases.size(); ++i) {
        loz::QuiverAlgebra A(cases[i].q);
        // king_test itself throws when the lattice and flow verdicts disagree
        StabilityVerdict v = king_test(A, A.rep01());
        if (v.classification != cases[i].expect) {
            note = "case " + std::to_string(i) + ": unexpected classification";
            return false;
        }
        if (v.classification == Stability::POLYSTABLE) {
            ++n_poly;
            MetricTrajectory tr =
                integrate_metric_flow(A, A.rep_connection(), A.unit0(), 1e3, {1e3});
            if (!(tr.residuals.back() < 1e-6)) {
                note = "case " + std::to_string(i) + ": residual " +
                       std::to_string(tr.residuals.back()) + " at t = 1e3";
                return false;
            }
        }
    }
    note = std::to_string(cases.size()) + " curated reps, " + std::to_string(n_poly) +
           " polystable below 1e-6 by t = 1e3";
    return cases.size() >= 20;
}

bool crit5(std::string& note) {
    // D1, D2 against closed-form expansions evaluated by hand at integer points
    {
        lat::WallReport w1 = lat::walls_5cycle({1, 1, 1, 1, 1});
        lat::WallReport w2 = lat::walls_5cycle({2, 1, 1, 1, 1});
        lat::WallReport w3 = lat::walls_5cycle({1, 2, 3, 4, 5});
        // D1 = m1 m4 + m3 m5 + 2 m4 m5 - m1 m2, D2 = m2 m5 + m1 m3 + 2 m1 m2 - m4 m5
        if (w1.D1 != 3.0 || w1.D2 != 3.0 || w2.D1 != 3.0 || w2.D2 != 6.0 || w3.D1 != 57.0 ||
            w3.D2 != -3.0) {
            note = "discriminant formula mismatch";
            return false;
        }
    }

    auto gaps = [](const lat::OrientedCycleGraph& g) {
        std::vector<double> h = csf::vertex_heights(g);
        std::vector<double> out;
        for (int i = 0; i < g.size(); ++i)
            out.push_back(std::abs(h[i] - h[(i + 1) % g.size()]));
        return out;
    };

    // chamber interiors: weight-corrected drift < 1e-3 per unit s at s = 20
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> md(0.4, 2.5);
    std::vector<std::vector<double>> interior{{4, 4, 1, 0.25, 0.25}, {0.25, 0.25, 1, 4, 4}};
    while (interior.size() < 22) {
        std::vector<double> m(5);
        double mean = 0;
        for (double& v : m) mean += (v = md(rng));
        mean /= 5;
        lat::WallReport w = lat::walls_5cycle(m);
        if (std::min(std::abs(w.D1), std::abs(w.D2)) < 0.5 * mean * mean) continue;
        interior.push_back(m);
    }
    for (const auto& m : interior) {
        lat::OrientedCycleGraph g = lat::five_cycle(m);
        csf::DriftReport dr = csf::wall_asymptotics(g, csf::equilibrium_seed(g), 15, 25);
        for (int i = 0; i < 5; ++i) {
            if (std::abs(dr.rate[i] - dr.predicted_rate[i]) > 1e-3) {
                note = "interior drift exceeds 1e-3";
                return false;
            }
            if (std::abs(dr.logs_coeff[i]) > 0.02) {
                note = "interior log s coefficient exceeds 0.02";
                return false;
            }
        }
    }

    // wall points: one marginal v_i per wall with |log s coefficient| > 0.1,
    // and the drifting partition matches the grading change across the wall
    std::vector<double> mid{1, 1, 1, 1, 1};
    struct Wall {
        std::vector<double> outer;
        double (*D)(const std::vector<double>&);
    };
    for (const Wall& w : {Wall{{4, 4, 1, 0.25, 0.25}, csf::wall_d1},
                          Wall{{0.25, 0.25, 1, 4, 4}, csf::wall_d2}}) {
        std::vector<double> mw = csf::wall_point(mid, w.outer, w.D);
        if (std::abs(w.D(mw)) > 1e-10) {
            note = "wall point does not solve D = 0";
            return false;
        }
        // marginal punctures: gap changes between the two adjacent chambers
        std::vector<double> ga = gaps(lat::five_cycle(mid));
        std::vector<double> gb = gaps(lat::five_cycle(w.outer));
        csf::DriftReport dr =
            csf::wall_asymptotics(lat::five_cycle(mw), std::vector<double>(5, 0.05), 50, 300);
        bool any = false;
        for (int i = 0; i < 5; ++i) {
            bool marginal = std::abs(ga[i] - gb[i]) > 0.1;
            double logs = std::abs(dr.logs_coeff[i]);
            if (logs > 0.1) any = true;
            if (marginal != (logs > 0.1)) {
                note = "drifting partition inconsistent with the grading change";
                return false;
            }
        }
        if (!any) {
            note = "no log s coefficient above 0.1 at the wall";
            return false;
        }
    }
    note = "22 interior vectors, both walls";
    return true;
}

bool crit6(std::string& note) {
    double L = 2 * std::acos(-1.0);
    csf::Grid g = csf::make_uniform_grid(L, 256);
    std::vector<double> f0(g.x.size());
    for (size_t j = 0; j < g.x.size(); ++j) f0[j] = std::sin(g.x[j]);
    csf::PdeOptions opt;
    opt.dt0 = 2e-4;
    opt.dt_growth = 0;
    opt.sample_times = {1.0};
    auto one = [](double, double) { return 1.0; };
    auto zero = [](double, double) { return 0.0; };
    csf::PdeTrajectory traj = csf::integrate_pde(g, f0, one, zero, 1.0, opt);
    double num = 0, den = 0;
    for (size_t j = 0; j < g.x.size(); ++j) {
        double exact = std::exp(-1.0) * std::sin(g.x[j]);
        num += (traj.states.back()[j] - exact) * (traj.states.back()[j] - exact);
        den += exact * exact;
    }
    double rel = std::sqrt(num / den);
    std::ostringstream ss;
    ss << "relative L2 error " << rel;
    note = ss.str();
    return rel < 0.01;
}

bool crit7(std::string& note) {
    double PI = std::acos(-1.0);
    csf::CylinderConfig cfg = csf::build_cylinder(5.0, {0.25, 1.25, 2.25, 3.25, 4.25});
    csf::Grid g = csf::make_grid(cfg, 1.0105, 2e-5);  // ~4000 nodes
    std::vector<double> vals{0.3 * PI, -0.3 * PI, -0.3 * PI, 0.3 * PI, -0.3 * PI};
    std::vector<double> f0(g.x.size());
    int n = 5;
    for (size_t j = 0; j < g.x.size(); ++j) {
        double x = g.x[j];
        int i = n - 1;
        while (i > 0 && cfg.punctures[i] > x + 1e-15) --i;
        double xa = cfg.punctures[i];
        double xb = i + 1 < n ? cfg.punctures[i + 1] : cfg.punctures[0] + cfg.L;
        double s = (x - xa) / (xb - xa);
        f0[j] = (1 - s) * vals[i] + s * vals[(i + 1) % n];
    }
    csf::PdeOptions opt;
    for (int k = 0;; ++k) {
        double t = 0.5 * std::pow(10.0, k / 20.0);
        if (t > 300 * 1.0000001) break;
        opt.sample_times.push_back(t);
    }
    csf::PdeTrajectory traj = csf::integrate_pde(cfg, g, f0, 300.0, opt);
    csf::CompareReport r = csf::compare_pde_ode(cfg, traj);
    double worst = r.trend[0];
    for (double tr : r.trend) worst = std::max(worst, tr);
    std::ostringstream ss;
    ss << g.x.size() << " nodes, worst gap trend " << worst << " per decade";
    note = ss.str();
    // shrinking gaps (negative slope) are convergence, not drift
    return worst < 0.1;
}

bool crit8(std::string& note) {
    std::vector<loz::QuiverData> reps;
    reps.push_back(a2_quiver(1.0, 1.0, 1.0, 0.0, 0.0));
    reps.push_back(a2_quiver(1.0, 1.0, 2.0, 0.0, 0.0));
    {
        lat::DirectedGraph g;
        g.mass = {1.0, 1.0, 1.0};
        g.edges = {{0, 1}, {1, 2}};
        reps.push_back(thin_quiver(g));
    }
    reps.push_back(thin_quiver(lat::five_cycle({1, 1, 1, 1, 1}).to_graph()));
    reps.push_back(thin_quiver(lat::five_cycle({2, 1, 1.3, 0.8, 1.1}).to_graph()));
    reps.push_back(thin_quiver(lat::five_cycle({4, 4, 1, 0.25, 0.25}).to_graph()));

    std::vector<double> times = log_times(10.0, 1e4);
    for (size_t i = 0; i < reps.size(); ++i) {
        loz::QuiverAlgebra A(reps[i]);
        AsymptoticSolution sol = construct_asymptotic_solution(A, A.rep01(), times);
        if (!(sol.residual_exponent < -1.05)) {
            note = "rep " + std::to_string(i) + ": residual exponent " +
                   std::to_string(sol.residual_exponent);
            return false;
        }
        AsymptoticFit fit = asymptotic_fit(A, sol.g.times, metric_of_gauge(A, sol.g),
                                           sol.step_proj);
        for (size_t k = 0; k < sol.weights.size(); ++k) {
            if (std::abs(sol.weights[k]) < 1e-9) continue;
            double rel = std::abs(fit.coeffs[k](1) - sol.weights[k]) / std::abs(sol.weights[k]);
            if (rel > 0.02) {
                note = "rep " + std::to_string(i) + ": log t coefficient off by " +
                       std::to_string(100 * rel) + "%";
                return false;
            }
        }
    }
    note = std::to_string(reps.size()) + " thin reps";
    return reps.size() >= 5;
}

bool crit9(std::string& note) {
#ifndef WFLOW_CLI_PATH
    note = "CLI path not configured";
    return false;
#else
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "wflow_acceptance_c9";
    std::filesystem::remove_all(dir);
    std::string cmd = std::string(WFLOW_CLI_PATH) + " --out " + dir.string() +
                      " reproduce chamber-diagrams > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
        note = "reproduce chamber-diagrams failed";
        return false;
    }
    if (!std::filesystem::exists(dir / "chamber_diagrams.svg")) {
        note = "missing SVG artifact";
        return false;
    }
    std::ifstream in(dir / "chamber_diagrams.json");
    nlohmann::json j = nlohmann::json::parse(in);
    if (j["panels"].size() != 3) {
        note = "expected three panels";
        return false;
    }
    for (const auto& panel : j["panels"]) {
        std::vector<double> m = panel["masses"].get<std::vector<double>>();
        std::vector<double> h = panel["heights"].get<std::vector<double>>();
        // brute-force oracle: ideal lattice of the thin 5-cycle, certified
        // weight filtration, heights read off the step decomposition
        std::vector<double> expect = csf::vertex_heights(lat::five_cycle(m));
        for (size_t i = 0; i < expect.size(); ++i)
            if (std::abs(h[i] - expect[i]) > 1e-9) {
                note = "panel heights disagree with the lattice oracle";
                return false;
            }
        if (panel["chamber"] == "MIDDLE") {
            std::vector<double> mid{0.5, -1.0, 0.0, 1.0, -0.5};
            for (size_t i = 0; i < mid.size(); ++i)
                if (std::abs(h[i] - mid[i]) > 1e-9) {
                    note = "MIDDLE panel heights are not (1/2, -1, 0, 1, -1/2)";
                    return false;
                }
        }
    }
    note = "three panels against the lattice oracle";
    return true;
#endif
}

}  // namespace

int main() {
    run(1, "lattice oracle equivalence (HN + weight filtration, 200 instances)", crit1);
    run(2, "Kaehler identities on random lozenge algebras", crit2);
    run(3, "metric-order monotonicity of the flow", crit3);
    run(4, "King consistency on curated representations", crit4);
    run(5, "chamber/wall reproduction for the five-cycle", crit5);
    run(6, "PDE heat-limit oracle", crit6);
    run(7, "PDE-ODE reduction drift on the five-puncture configuration", crit7);
    run(8, "asymptotic-solution certificates for thin representations", crit8);
    run(9, "chamber-diagram figure reproduction", crit9);
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
