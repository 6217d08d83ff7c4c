#pragma once

#include <map>

#include "wflow/lattice/stability.hpp"
#include "wflow/util/qp.hpp"

namespace wflow::lat {

/// Coefficient vector on the basis (log t, log log t, ...), compared by growth
/// as t -> +infinity, i.e. lexicographically. Trailing zeros are canonical.
struct IteratedLabel {
    std::vector<double> coeffs;

    void canonicalize(double tol = 1e-12) {
        while (!coeffs.empty() && std::abs(coeffs.back()) < tol) coeffs.pop_back();
    }
    int depth() const { return static_cast<int>(coeffs.size()); }

    bool operator<(const IteratedLabel& o) const {
        size_t n = std::max(coeffs.size(), o.coeffs.size());
        for (size_t i = 0; i < n; ++i) {
            double a = i < coeffs.size() ? coeffs[i] : 0.0;
            double b = i < o.coeffs.size() ? o.coeffs[i] : 0.0;
            if (a != b) return a < b;
        }
        return false;
    }
};

struct IteratedFiltration {
    std::vector<int> chain;               // in the original lattice
    std::vector<IteratedLabel> labels;    // one per step
    int depth = 1;
};

namespace detail {

/// The lattice M(a,lambda): tuples b_k in [a_{k-1}, a_k] such that [b_k, b_l]
/// is complemented whenever lambda_l - lambda_k <= 1, ordered componentwise.
struct MLattice {
    FiniteLattice M;
    std::vector<std::vector<int>> tuples;   // M element id -> components in L
    std::vector<double> im_charge;          // Im Z([0, x]) per element
    std::vector<double> re_charge;          // Re Z([0, x]) per element
};

inline MLattice build_m_lattice(const PolarizedLattice& P, const RFiltration& f) {
    const FiniteLattice& L = P.L;
    int n = f.steps();
    std::vector<std::vector<int>> step_iv(n);
    for (int k = 0; k < n; ++k) step_iv[k] = L.interval(f.chain[k], f.chain[k + 1]);

    std::map<std::pair<int, int>, bool> comp_cache;
    auto complemented = [&](int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = comp_cache.find(key);
        if (it != comp_cache.end()) return it->second;
        bool v = is_complemented_interval(L, a, b);
        comp_cache[key] = v;
        return v;
    };

    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(n);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            tuples.push_back(cur);
            return;
        }
        for (int b : step_iv[k]) {
            cur[k] = b;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j)
                if (f.labels[k] - f.labels[j] <= 1.0 + 1e-9) ok = complemented(cur[j], b);
            if (ok) rec(k + 1);
            if (tuples.size() > 60000) throw lattice_error("M(a,lambda) too large");
        }
    };
    rec(0);

    MLattice out;
    out.tuples = std::move(tuples);
    out.M = FiniteLattice::from_leq(
        static_cast<int>(out.tuples.size()), [&](int i, int j) {
            for (int k = 0; k < n; ++k)
                if (!L.leq(out.tuples[i][k], out.tuples[j][k])) return false;
            return true;
        });
    for (auto& t : out.tuples) {
        double im = 0, re = 0;
        for (int k = 0; k < n; ++k) {
            double x = P.Z(P.kclass(f.chain[k], t[k])).real();
            re += x;
            im += f.labels[k] * x;
        }
        out.im_charge.push_back(im);
        out.re_charge.push_back(re);
    }
    return out;
}

/// Phase-0 semistability of M(a,lambda) under Z([b,c]) = sum (1+i lambda_k) X([b_k,c_k]).
inline bool m_semistable_phase0(const MLattice& M, double tol = 1e-9) {
    int bot = M.M.bottom(), top = M.M.top();
    if (std::abs(M.im_charge[top] - M.im_charge[bot]) > tol) return false;
    for (int x = 0; x < M.M.size(); ++x)
        if (M.im_charge[x] - M.im_charge[bot] > tol) return false;
    return true;
}

inline void enumerate_maximal_chains(const FiniteLattice& L,
                                     std::vector<std::vector<int>>& out) {
    std::vector<int> cur{L.bottom()};
    std::function<void()> rec = [&]() {
        int x = cur.back();
        if (x == L.top()) {
            out.push_back(cur);
            return;
        }
        for (int c : L.upper_covers(x)) {
            cur.push_back(c);
            rec();
            cur.pop_back();
        }
        if (out.size() > 2000000) throw lattice_error("too many maximal chains");
    };
    rec();
}

}  // namespace detail

struct WeightFiltrationResult {
    RFiltration filtration;
    /// Phase-0 sublattice of M(a,lambda) with its induced real polarization,
    /// plus the tuple decomposition of each of its elements.
    std::optional<PolarizedLattice> m0;
    std::vector<std::vector<int>> m0_tuples;
    bool m0_complemented = true;
};

/// Weight filtration of an artinian lattice with real polarization: the unique
/// paracomplemented R-filtration whose associated lattice M(a,lambda) is
/// semistable of phase 0. Found as the norm-minimizing label assignment over
/// maximal chains and certified against the definition before returning.
inline WeightFiltrationResult weight_filtration(const PolarizedLattice& P) {
    if (!P.Z.is_real()) throw lattice_error("weight_filtration: polarization must be real");
    const FiniteLattice& L = P.L;

    std::vector<std::vector<int>> chains;
    detail::enumerate_maximal_chains(L, chains);

    std::map<std::pair<int, int>, bool> comp_cache;
    auto complemented = [&](int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = comp_cache.find(key);
        if (it != comp_cache.end()) return it->second;
        bool v = is_complemented_interval(L, a, b);
        comp_cache[key] = v;
        return v;
    };

    struct Candidate {
        RFiltration f;
        double objective;
    };
    std::vector<Candidate> cands;

    for (const auto& chain : chains) {
        int N = static_cast<int>(chain.size()) - 1;
        Eigen::VectorXd d(N);
        for (int k = 0; k < N; ++k)
            d(k) = 2.0 * P.Z(P.kclass(chain[k], chain[k + 1])).real();
        // constraints: weak monotonicity, and gap >= 1 across non-complemented spans
        std::vector<Eigen::RowVectorXd> rows;
        std::vector<double> rhs;
        for (int k = 0; k + 1 < N; ++k) {
            Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(N);
            r(k + 1) = 1;
            r(k) = -1;
            rows.push_back(r);
            rhs.push_back(0.0);
        }
        for (int k = 1; k <= N; ++k)
            for (int l = k; l <= N; ++l)
                if (!complemented(chain[k - 1], chain[l])) {
                    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(N);
                    r(l - 1) += 1;
                    r(k - 1) -= 1;
                    rows.push_back(r);
                    rhs.push_back(1.0);
                }
        Eigen::MatrixXd A(rows.size(), N);
        Eigen::VectorXd b(rows.size());
        for (size_t j = 0; j < rows.size(); ++j) {
            A.row(static_cast<int>(j)) = rows[j];
            b(static_cast<int>(j)) = rhs[j];
        }
        Eigen::VectorXd x0(N);
        for (int k = 0; k < N; ++k) x0(k) = k;  // gaps of 1: always feasible
        util::QpResult qp = util::solve_diag_qp(d, A, b, x0);

        // merge equal labels into steps
        RFiltration f;
        f.chain.push_back(chain[0]);
        for (int k = 0; k < N; ++k) {
            if (k + 1 < N && qp.x(k + 1) - qp.x(k) < 1e-7) continue;
            f.chain.push_back(chain[k + 1]);
            f.labels.push_back(qp.x(k));
        }
        cands.push_back({std::move(f), qp.objective});
    }

    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.objective < b.objective; });

    std::string last_fail = "no candidates";
    for (auto& c : cands) {
        if (!cands.empty() && c.objective > cands.front().objective + 1e-7) break;
        c.f.validate(L);
        if (!is_paracomplemented(L, c.f)) {
            last_fail = "candidate not paracomplemented";
            continue;
        }
        detail::MLattice M = detail::build_m_lattice(P, c.f);
        if (!detail::m_semistable_phase0(M)) {
            last_fail = "M(a,lambda) not phase-0 semistable";
            continue;
        }
        // extract the phase-0 sublattice and its induced real polarization
        WeightFiltrationResult res;
        res.filtration = c.f;
        std::vector<int> zero_ids;
        double bot_im = M.im_charge[M.M.bottom()];
        for (int x = 0; x < M.M.size(); ++x)
            if (std::abs(M.im_charge[x] - bot_im) < 1e-9) zero_ids.push_back(x);
        auto [m0lat, ids] = M.M.sublattice(zero_ids);
        res.m0_complemented = is_complemented(m0lat);
        for (int id : ids) res.m0_tuples.push_back(M.tuples[id]);
        SimpleClasses cls(m0lat);
        Polarization X;
        X.z.assign(cls.count(), 0.0);
        std::vector<bool> seen(cls.count(), false);
        for (int a = 0; a < m0lat.size(); ++a)
            for (int bb : m0lat.upper_covers(a)) {
                int cl = cls.class_of_cover(a, bb);
                if (seen[cl]) continue;
                seen[cl] = true;
                double v = 0;
                for (size_t k = 0; k < res.m0_tuples[a].size(); ++k)
                    v += P.Z(P.kclass(res.m0_tuples[a][k], res.m0_tuples[bb][k])).real();
                X.z[cl] = v;
            }
        res.m0 = PolarizedLattice(std::move(m0lat), std::move(X));
        return res;
    }
    throw lattice_error("weight_filtration: certification failed (" + last_fail + ")");
}

/// Iterated weight filtration: recursively refines via the phase-0 sublattice
/// until a complemented lattice is reached. Labels live in
/// R log t + R log log t + ...
inline IteratedFiltration iterated_weight_filtration(const PolarizedLattice& P, int depth_cap = 6) {
    if (depth_cap <= 0) throw lattice_error("iterated weight filtration: depth cap reached");
    WeightFiltrationResult w = weight_filtration(P);
    IteratedFiltration out;
    if (w.m0_complemented) {
        out.chain = w.filtration.chain;
        for (double l : w.filtration.labels) {
            IteratedLabel lab{{l}};
            lab.canonicalize();
            out.labels.push_back(lab);
        }
        out.depth = 1;
        return out;
    }
    IteratedFiltration sub = iterated_weight_filtration(*w.m0, depth_cap - 1);
    out.depth = sub.depth + 1;
    int nsteps = w.filtration.steps();
    out.chain.push_back(w.filtration.chain[0]);
    for (int k = 0; k < nsteps; ++k) {
        for (size_t j = 0; j + 1 < sub.chain.size(); ++j) {
            int prev = w.m0_tuples[sub.chain[j]][k];
            int next = w.m0_tuples[sub.chain[j + 1]][k];
            if (prev == next) continue;
            IteratedLabel lab;
            lab.coeffs.push_back(w.filtration.labels[k]);
            for (double c : sub.labels[j].coeffs) lab.coeffs.push_back(c);
            lab.canonicalize();
            out.chain.push_back(next);
            out.labels.push_back(lab);
        }
    }
    for (size_t j = 0; j + 1 < out.labels.size(); ++j)
        if (!(out.labels[j] < out.labels[j + 1]))
            throw lattice_error("iterated weight filtration: labels not increasing");
    return out;
}

}  // namespace wflow::lat
