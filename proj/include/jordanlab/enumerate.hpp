#pragma once

// Orderly enumeration of small Jordan schemes, valency-multiset
// feasibility, and merging (fusion) search inside a color graph.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "autgrp.hpp"
#include "colorgraph.hpp"
#include "stabilize.hpp"

namespace jlab {

// All valency multisets {1} u {n_1..n_{rank-1}} with sum n; for odd n every
// non-reflexive valency must be even (a symmetric regular graph of odd
// valency needs an even vertex count).
inline std::vector<std::vector<long long>> valency_multisets(int n, int rank) {
    if (rank < 2) throw std::invalid_argument("rank must be at least 2");
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, int parts, long long remaining, long long minv) -> void {
        if (parts == 0) {
            if (remaining == 0) {
                std::vector<long long> ms{1};
                ms.insert(ms.end(), cur.begin(), cur.end());
                out.push_back(std::move(ms));
            }
            return;
        }
        for (long long v = minv; v * parts <= remaining; ++v) {
            if (n % 2 == 1 && v % 2 == 1) continue;
            cur.push_back(v);
            self(self, parts - 1, remaining - v, v);
            cur.pop_back();
        }
    };
    rec(rec, rank - 1, n - 1, 1);
    return out;
}

struct EnumerationTask {
    int n = 0;
    int min_rank = 3;
    int max_rank = -1;  // -1: up to n
    std::optional<std::vector<long long>> valencies;  // full multiset incl. the 1
    bool proper_only = false;
    bool prime_shortcut = false;  // valency-2-spread argument for prime n
    long long node_budget = -1;   // -1: unlimited
};

struct EnumeratedScheme {
    ColorGraph graph;  // canonical representative
    SchemeReport report;
    PropernessReport properness;
};

struct EnumerationResult {
    std::vector<EnumeratedScheme> schemes;
    bool complete = true;
    long long nodes = 0;
};

namespace detail {

// Orderly search for one valency multiset (ascending, val[0] = 1 for the
// reflexive color). Cells of the upper triangle are decided row by row;
// when a row completes, the symmetrized-product fingerprints of all newly
// finished pairs are fully determined and must agree per color class.
class JordanSearch {
public:
    JordanSearch(int n, std::vector<long long> val, long long budget)
        : n_(n), r_((int)val.size()), val_(std::move(val)), budget_(budget) {
        cg_ = ColorGraph(n_, r_);
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) cg_.at(x, y) = x == y ? 0 : -1;
        cnt_.assign((size_t)n_ * r_, 0);
        for (int x = 0; x < n_; ++x) cnt_[(size_t)x * r_ + 0] = 1;
        // equal-valency color groups for first-use symmetry breaking
        group_head_.assign(r_, 0);
        for (int c = 2; c < r_; ++c) group_head_[c] = val_[c] == val_[c - 1] ? group_head_[c - 1] : c;
        used_color_.assign(r_, false);
        used_color_[0] = true;
        ref_set_.assign(r_, false);
        refs_.assign(r_, {});
    }

    // calls sink(cg) for every completed Jordan scheme; returns false when
    // the node budget ran out
    template <class Sink>
    bool run(Sink&& sink) {
        exhausted_ = false;
        search(0, 1, sink);
        return !exhausted_;
    }

    long long nodes() const { return nodes_; }

private:
    int n_, r_;
    std::vector<long long> val_;
    long long budget_;
    long long nodes_ = 0;
    bool exhausted_ = false;
    ColorGraph cg_;
    std::vector<long long> cnt_;     // vertex x color counts
    std::vector<int> group_head_;    // first color of the equal-valency group
    std::vector<char> used_color_;
    using Fp = std::vector<long long>;  // fingerprint indexed by i*r+j, i<=j
    std::vector<char> ref_set_;
    std::vector<Fp> refs_;

    Fp fingerprint(int x, int y) const {
        Fp f((size_t)r_ * r_, 0);
        for (int z = 0; z < n_; ++z) {
            int a = cg_.at(x, z), b = cg_.at(z, y);
            if (a > b) std::swap(a, b);
            f[(size_t)a * r_ + b]++;
        }
        return f;
    }

    // row `row` just finished: verify fingerprints of every newly
    // determined pair (all incident cells are now decided)
    template <class Sink>
    void row_done(int row, Sink&& sink) {
        std::vector<int> set_here;
        bool ok = true;
        auto check_pair = [&](int x, int y) {
            int c = cg_.at(x, y);
            Fp f = fingerprint(x, y);
            if (!ref_set_[c]) {
                ref_set_[c] = true;
                refs_[c] = std::move(f);
                set_here.push_back(c);
            } else if (refs_[c] != f)
                ok = false;
        };
        for (int x = 0; x < row && ok; ++x) check_pair(x, row);
        bool last = row == n_ - 2;  // the final row of cells
        if (last)
            for (int x = 0; x < n_ - 1 && ok; ++x) check_pair(x, n_ - 1);
        if (ok) {
            if (!last)
                search(row + 1, row + 2, sink);
            else
                sink(cg_);
        }
        for (int c : set_here) ref_set_[c] = false;
    }

    template <class Sink>
    void search(int x, int y, Sink&& sink) {
        if (exhausted_) return;
        if (budget_ >= 0 && nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (y == n_) {
            row_done(x, sink);
            return;
        }
        ++nodes_;
        for (int c = 1; c < r_; ++c) {
            // first-use order inside an equal-valency group
            if (!used_color_[c] && c > group_head_[c] && !used_color_[c - 1]) continue;
            // row 0 nondecreasing
            if (x == 0 && y > 1 && c < cg_.at(0, y - 1)) continue;
            if (cnt_[(size_t)x * r_ + c] >= val_[c] || cnt_[(size_t)y * r_ + c] >= val_[c]) continue;
            // row-x feasibility: remaining cells in the row must be able to
            // fill every color deficit of vertex x
            cg_.at(x, y) = c;
            cg_.at(y, x) = c;
            cnt_[(size_t)x * r_ + c]++;
            cnt_[(size_t)y * r_ + c]++;
            bool fresh = !used_color_[c];
            used_color_[c] = true;
            bool feasible = true;
            if (y == n_ - 1) {
                for (int cc = 1; cc < r_; ++cc)
                    if (cnt_[(size_t)x * r_ + cc] != val_[cc]) {
                        feasible = false;
                        break;
                    }
            }
            if (feasible) search(x, y + 1, sink);
            if (fresh) used_color_[c] = false;
            cnt_[(size_t)x * r_ + c]--;
            cnt_[(size_t)y * r_ + c]--;
            cg_.at(x, y) = -1;
            cg_.at(y, x) = -1;
        }
    }
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

// Complete isomorph-free enumeration of homogeneous Jordan schemes of
// order n matching the task filters. Guaranteed complete for n <= 12
// (subject to the node budget).
inline EnumerationResult enumerate_jordan_schemes(const EnumerationTask& task) {
    int n = task.n;
    if (n < 1) throw std::invalid_argument("n must be positive");
    int max_rank = task.max_rank < 0 ? n : task.max_rank;
    EnumerationResult result;
    if (task.proper_only && task.prime_shortcut && detail::is_prime(n)) {
        // a proper scheme needs rank >= 5, forcing a valency-2 color whose
        // relation is a union of equal cycles; for prime n that is a single
        // n-cycle and its closure is the (symmetric) cyclotomic scheme
        return result;
    }
    std::set<std::vector<int>> seen;
    for (int rank = std::max(2, task.min_rank); rank <= max_rank; ++rank) {
        if (task.proper_only && rank <= 4) continue;  // rank <= 4 is never proper
        for (auto& ms : valency_multisets(n, rank)) {
            if (task.valencies) {
                auto want = *task.valencies;
                std::sort(want.begin(), want.end());
                if (want != ms) continue;
            }
            detail::JordanSearch search(n, ms, task.node_budget);
            std::vector<ColorGraph> found;
            bool complete = search.run([&](const ColorGraph& cg) { found.push_back(cg); });
            result.nodes += search.nodes();
            if (!complete) result.complete = false;
            for (auto& cg : found) {
                SchemeReport rep = classify(cg);
                if (!rep.is_jordan_scheme) throw std::logic_error("search emitted a non-Jordan candidate");
                ColorGraph canon = canonical_form(cg);
                if (!seen.insert(canon.cells).second) continue;
                PropernessReport pr = is_proper(canon);
                if (task.proper_only && !pr.proper) continue;
                result.schemes.push_back({canon, classify(canon), pr});
            }
        }
    }
    return result;
}

struct MergingConstraints {
    enum class Target { AS, JordanScheme };
    Target target = Target::AS;
    int min_rank = 3;
    int exact_rank = -1;  // -1: any
    std::optional<std::vector<long long>> valencies;
};

// All partitions of the color set (other than the identity partition)
// whose merge_colors image classifies as the requested target. Reflexive
// colors are always placed in one block (homogeneous targets).
inline std::vector<std::vector<std::vector<int>>> find_mergings(const ColorGraph& cg,
                                                                const MergingConstraints& con) {
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    int r = cg.r;
    if (r > 21 || (con.exact_rank < 0 && r > 13))
        throw std::invalid_argument("merging search limited to rank <= 21 (<= 13 without an exact rank)");
    SchemeReport inrep = classify(cg);
    if (!inrep.reflexive_split_ok)
        throw std::invalid_argument("merging search requires a reflexive color split");
    std::vector<int> refl, rest;
    for (int c = 0; c < r; ++c) (inrep.reflexive[c] ? refl : rest).push_back(c);
    if (refl.empty()) throw std::invalid_argument("no reflexive colors");

    std::optional<std::vector<long long>> want = con.valencies;
    if (want) std::sort(want->begin(), want->end());

    std::vector<std::vector<std::vector<int>>> out;
    int m = (int)rest.size();
    std::vector<std::vector<int>> blocks;  // blocks of non-reflexive colors
    auto flush = [&]() {
        int rank = 1 + (int)blocks.size();
        if (rank >= r) return;  // identity partition: not a merging
        if (rank < con.min_rank) return;
        if (con.exact_rank >= 0 && rank != con.exact_rank) return;
        std::vector<std::vector<int>> partition;
        partition.push_back(refl);
        for (auto& b : blocks) partition.push_back(b);
        ColorGraph merged = merge_colors(cg, partition);
        SchemeReport rep = classify(merged);
        bool good = false;
        if (con.target == MergingConstraints::Target::AS)
            good = rep.is_cc && rep.is_homogeneous;
        else
            good = rep.is_jordan_scheme && rep.is_homogeneous;
        if (good && want) {
            auto v = rep.valencies;
            std::sort(v.begin(), v.end());
            if (v != *want) good = false;
        }
        if (good) out.push_back(std::move(partition));
    };
    auto rec = [&](auto&& self, int i) -> void {
        if (i == m) {
            flush();
            return;
        }
        int c = rest[i];
        // transpose closure: a color joins the block of its transpose
        int ct = inrep.transpose_closed ? inrep.transpose[c] : -1;
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            if (ct >= 0 && ct != c && ct < c &&
                std::find(blocks[bi].begin(), blocks[bi].end(), ct) == blocks[bi].end()) {
                // transpose lives in another block; only legal when the
                // target allows paired blocks (AS), checked by classify
                if (con.target == MergingConstraints::Target::JordanScheme) continue;
            }
            blocks[bi].push_back(c);
            self(self, i + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({c});
        self(self, i + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
    return out;
}

}  // namespace jlab
