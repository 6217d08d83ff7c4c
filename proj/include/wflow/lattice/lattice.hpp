#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wflow::lat {

class lattice_error : public std::runtime_error {
public:
    explicit lattice_error(const std::string& what) : std::runtime_error(what) {}
};

// Hard cap on element count; everything here is exhaustive.
inline constexpr int kMaxElements = 1 << 14;

/// Finite lattice given by its order relation. Elements are ids 0..n-1.
/// Down/up sets are stored as bitsets; meet/join tables are built lazily
/// for small lattices and computed on demand otherwise.
class FiniteLattice {
public:
    FiniteLattice() = default;

    static FiniteLattice from_leq(int n, const std::function<bool(int, int)>& leq_fn) {
        if (n <= 0) throw lattice_error("empty lattice");
        if (n > kMaxElements) throw lattice_error("lattice exceeds element cap");
        FiniteLattice L;
        L.n_ = n;
        L.words_ = (n + 63) / 64;
        L.down_.assign(static_cast<size_t>(n) * L.words_, 0);
        L.up_.assign(static_cast<size_t>(n) * L.words_, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (leq_fn(j, i)) {
                    L.down_[static_cast<size_t>(i) * L.words_ + j / 64] |= 1ull << (j % 64);
                    L.up_[static_cast<size_t>(j) * L.words_ + i / 64] |= 1ull << (i % 64);
                }
        L.finish_init();
        return L;
    }

    int size() const { return n_; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }

    bool leq(int a, int b) const {
        return (down_[static_cast<size_t>(b) * words_ + a / 64] >> (a % 64)) & 1u;
    }
    bool lt(int a, int b) const { return a != b && leq(a, b); }

    int meet(int a, int b) const {
        if (!meet_tab_.empty()) return meet_tab_[static_cast<size_t>(a) * n_ + b];
        return meet_raw(a, b);
    }
    int join(int a, int b) const {
        if (!join_tab_.empty()) return join_tab_[static_cast<size_t>(a) * n_ + b];
        return join_raw(a, b);
    }

    /// Elements covering a (immediate successors).
    const std::vector<int>& upper_covers(int a) const {
        ensure_covers();
        return upper_covers_[a];
    }
    const std::vector<int>& lower_covers(int a) const {
        ensure_covers();
        return lower_covers_[a];
    }

    std::vector<int> interval(int a, int b) const {
        std::vector<int> out;
        for (int x = 0; x < n_; ++x)
            if (leq(a, x) && leq(x, b)) out.push_back(x);
        return out;
    }

    /// Length of a maximal chain from a to b (well-defined by Jordan-Holder-Dedekind).
    int height(int a, int b) const {
        int len = 0, x = a;
        while (x != b) {
            int next = -1;
            for (int c : upper_covers(x))
                if (leq(c, b)) { next = c; break; }
            if (next < 0) throw lattice_error("height: not an interval");
            x = next;
            ++len;
        }
        return len;
    }

    /// Exhaustive modular-law check over all triples.
    bool is_modular() const {
        for (int x = 0; x < n_; ++x)
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b < n_; ++b) {
                    int lhs = join(meet(x, b), meet(a, b));
                    int rhs = meet(join(meet(x, b), a), b);
                    if (lhs != rhs) return false;
                }
        return true;
    }

    /// Restrict to a subset of element ids closed under meet and join.
    /// Returns the sub-lattice and the id map (new id -> old id).
    std::pair<FiniteLattice, std::vector<int>> sublattice(std::vector<int> elems) const {
        std::vector<int> ids = std::move(elems);
        FiniteLattice S = from_leq(static_cast<int>(ids.size()),
                                   [&](int i, int j) { return leq(ids[i], ids[j]); });
        for (size_t i = 0; i < ids.size(); ++i)
            for (size_t j = 0; j < ids.size(); ++j) {
                int m = meet(ids[i], ids[j]);
                int jn = join(ids[i], ids[j]);
                bool mok = false, jok = false;
                for (int id : ids) { mok |= (id == m); jok |= (id == jn); }
                if (!mok || !jok) throw lattice_error("subset not closed under meet/join");
            }
        return {std::move(S), std::move(ids)};
    }

private:
    int n_ = 0, words_ = 0, bottom_ = -1, top_ = -1;
    std::vector<uint64_t> down_, up_;
    std::vector<int32_t> meet_tab_, join_tab_;
    mutable std::vector<std::vector<int>> upper_covers_, lower_covers_;
    mutable bool covers_done_ = false;

    const uint64_t* down_row(int i) const { return &down_[static_cast<size_t>(i) * words_]; }
    const uint64_t* up_row(int i) const { return &up_[static_cast<size_t>(i) * words_]; }

    int extreme(const std::vector<uint64_t>& cand, bool from_down) const {
        // unique element of cand whose down (resp. up) row contains cand
        int best = -1;
        int bestpop = -1;
        for (int i = 0; i < n_; ++i) {
            if (!((cand[i / 64] >> (i % 64)) & 1u)) continue;
            const uint64_t* row = from_down ? down_row(i) : up_row(i);
            int pop = 0;
            for (int w = 0; w < words_; ++w) pop += __builtin_popcountll(row[w] & cand[w]);
            if (pop > bestpop) { bestpop = pop; best = i; }
        }
        if (best < 0) return -1;
        const uint64_t* row = from_down ? down_row(best) : up_row(best);
        for (int w = 0; w < words_; ++w)
            if ((cand[w] & ~row[w]) != 0) return -1;
        return best;
    }

    int meet_raw(int a, int b) const {
        std::vector<uint64_t> cand(words_);
        for (int w = 0; w < words_; ++w) cand[w] = down_row(a)[w] & down_row(b)[w];
        int m = extreme(cand, true);
        if (m < 0) throw lattice_error("meet does not exist; not a lattice");
        return m;
    }
    int join_raw(int a, int b) const {
        std::vector<uint64_t> cand(words_);
        for (int w = 0; w < words_; ++w) cand[w] = up_row(a)[w] & up_row(b)[w];
        int j = extreme(cand, false);
        if (j < 0) throw lattice_error("join does not exist; not a lattice");
        return j;
    }

    void finish_init() {
        // reflexivity + antisymmetry
        for (int i = 0; i < n_; ++i) {
            if (!leq(i, i)) throw lattice_error("order not reflexive");
            for (int j = 0; j < i; ++j)
                if (leq(i, j) && leq(j, i)) throw lattice_error("order not antisymmetric");
        }
        for (int i = 0; i < n_; ++i) {
            bool is_bot = true, is_top = true;
            for (int j = 0; j < n_; ++j) {
                is_bot &= leq(i, j);
                is_top &= leq(j, i);
            }
            if (is_bot) bottom_ = i;
            if (is_top) top_ = i;
        }
        if (bottom_ < 0 || top_ < 0) throw lattice_error("no bottom/top element");
        if (n_ <= 2048) {
            meet_tab_.assign(static_cast<size_t>(n_) * n_, -1);
            join_tab_.assign(static_cast<size_t>(n_) * n_, -1);
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b <= a; ++b) {
                    int m = meet_raw(a, b), j = join_raw(a, b);
                    meet_tab_[static_cast<size_t>(a) * n_ + b] = m;
                    meet_tab_[static_cast<size_t>(b) * n_ + a] = m;
                    join_tab_[static_cast<size_t>(a) * n_ + b] = j;
                    join_tab_[static_cast<size_t>(b) * n_ + a] = j;
                }
        }
    }

    void ensure_covers() const {
        if (covers_done_) return;
        upper_covers_.assign(n_, {});
        lower_covers_.assign(n_, {});
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                if (a == b || !leq(a, b)) continue;
                // b covers a iff [a,b] = {a,b}
                int count = 0;
                for (int w = 0; w < words_; ++w)
                    count += __builtin_popcountll(down_row(b)[w] & up_row(a)[w]);
                if (count == 2) {
                    upper_covers_[a].push_back(b);
                    lower_covers_[b].push_back(a);
                }
            }
        covers_done_ = true;
    }
};

/// True iff every element of [a,b] has a complement within [a,b].
inline bool is_complemented_interval(const FiniteLattice& L, int a, int b) {
    if (!L.leq(a, b)) throw lattice_error("is_complemented_interval: a must be <= b");
    std::vector<int> iv = L.interval(a, b);
    for (int x : iv) {
        bool found = false;
        for (int y : iv)
            if (L.meet(x, y) == a && L.join(x, y) == b) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

inline bool is_complemented(const FiniteLattice& L) {
    return is_complemented_interval(L, L.bottom(), L.top());
}

/// Whether a single element has a complement in [0,1].
inline bool complement_exists(const FiniteLattice& L, int x) {
    for (int y = 0; y < L.size(); ++y)
        if (L.meet(x, y) == L.bottom() && L.join(x, y) == L.top()) return true;
    return false;
}

}  // namespace wflow::lat
