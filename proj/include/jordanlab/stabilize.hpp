#pragma once

// Weisfeiler-Leman and Jordan stabilization, properness/genuineness tests,
// walk regularity, distance-regularity parameters, and spread checks.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "colorgraph.hpp"

namespace jlab {

struct ClosureResult {
    ColorGraph closure;
    int rounds = 0;
    std::vector<std::vector<int>> refinement_map;  // input color -> output colors
};

namespace detail {

// Renumber colors so that equal signatures share an id and ids follow the
// lexicographic order of signatures. Returns the new rank.
template <class Sig>
int renumber(std::vector<Sig>& sigs, ColorGraph& cg) {
    std::map<Sig, int> ids;
    for (auto& s : sigs) ids.emplace(s, 0);
    int next = 0;
    for (auto& [sig, id] : ids) id = next++;
    for (size_t i = 0; i < cg.cells.size(); ++i) cg.cells[i] = ids[sigs[i]];
    cg.r = next;
    return next;
}

inline void presplit_diagonal(ColorGraph& cg) {
    std::vector<std::pair<int, int>> sigs(cg.cells.size());
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y)
            sigs[(size_t)x * cg.n + y] = {x == y ? 0 : 1, cg.at(x, y)};
    renumber(sigs, cg);
}

inline std::vector<std::vector<int>> compute_refinement_map(const ColorGraph& in, const ColorGraph& out) {
    std::vector<std::set<int>> m(in.r);
    for (size_t i = 0; i < in.cells.size(); ++i) m[in.cells[i]].insert(out.cells[i]);
    std::vector<std::vector<int>> res(in.r);
    for (int c = 0; c < in.r; ++c) res[c].assign(m[c].begin(), m[c].end());
    return res;
}

}  // namespace detail

namespace detail {

// WL refinement with the signature-sorted color numbering only (no final
// normalization); this numbering is invariant under vertex relabeling,
// which canonical_form relies on.
inline ColorGraph wl_raw(const ColorGraph& input, int* rounds_out = nullptr) {
    if (!valid_partition(input)) throw std::invalid_argument("not a valid partition");
    int n = input.n;
    ColorGraph cg = input;
    detail::presplit_diagonal(cg);
    int rounds = 0;
    while (true) {
        int before = cg.r;
        using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
        std::vector<Sig> sigs((size_t)n * n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                std::vector<std::pair<int, int>> ms(n);
                for (int z = 0; z < n; ++z) ms[z] = {cg.at(x, z), cg.at(z, y)};
                std::sort(ms.begin(), ms.end());
                sigs[(size_t)x * n + y] = {cg.at(x, y), std::move(ms)};
            }
        detail::renumber(sigs, cg);
        if (cg.r == before) break;
        ++rounds;
    }
    if (rounds_out) *rounds_out = rounds;
    return cg;
}

}  // namespace detail

// 2-dimensional WL refinement. Signature of (x,y): current color plus the
// sorted multiset over z of (c(x,z), c(z,y)); colors renumbered each round
// by sorted signatures. The diagonal is pre-split.
inline ClosureResult wl_closure(const ColorGraph& input) {
    int rounds = 0;
    ColorGraph cg = detail::wl_raw(input, &rounds);
    ClosureResult res;
    res.closure = normalize_colors(cg);
    res.rounds = rounds;
    res.refinement_map = detail::compute_refinement_map(input, res.closure);
    return res;
}

// Jordan closure: pre-split the diagonal, symmetrize cell-wise by unordered
// color pairs, then split classes on non-constant symmetrized products of
// basis relations until a fixpoint.
inline ClosureResult jordan_closure(const ColorGraph& input) {
    if (!valid_partition(input)) throw std::invalid_argument("not a valid partition");
    int n = input.n;
    ColorGraph cg = input;
    detail::presplit_diagonal(cg);
    cg = symmetrize(cg);
    int rounds = 0;
    while (true) {
        int before = cg.r;
        std::vector<RelationMatrix> rel;
        rel.reserve(cg.r);
        for (int c = 0; c < cg.r; ++c) rel.push_back(relation(cg, c));
        using Sig = std::pair<int, std::vector<long long>>;
        std::vector<Sig> sigs((size_t)n * n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) sigs[(size_t)x * n + y].first = cg.at(x, y);
        for (int i = 0; i < cg.r; ++i)
            for (int j = i; j < cg.r; ++j) {
                IntMatrix m = symmetrized_product(rel[i], rel[j]);
                for (size_t idx = 0; idx < m.entries.size(); ++idx)
                    sigs[idx].second.push_back(m.entries[idx]);
            }
        detail::renumber(sigs, cg);
        if (cg.r == before) break;
        ++rounds;
    }
    ClosureResult res;
    res.closure = normalize_colors(cg);
    res.rounds = rounds;
    res.refinement_map = detail::compute_refinement_map(input, res.closure);
    return res;
}

struct PropernessReport {
    bool proper = false;
    bool genuine = false;
    int wl_rank = 0;
    std::vector<int> wl_fibers;
    int swl_rank = 0;
};

// proper  <=> symmetrize(WL(J)) differs from J as a partition;
// genuine <=> WL(J) differs from J as a partition.
inline PropernessReport is_proper(const ColorGraph& cg) {
    SchemeReport rep = classify(cg);
    if (!rep.is_jordan_scheme) throw std::domain_error("is_proper requires a Jordan scheme");
    ClosureResult wl = wl_closure(cg);
    PropernessReport out;
    out.wl_rank = wl.closure.r;
    SchemeReport wlrep = classify(wl.closure);
    for (auto& f : wlrep.fibers) out.wl_fibers.push_back((int)f.size());
    ColorGraph swl = symmetrize(wl.closure);
    out.swl_rank = swl.r;
    out.genuine = !same_partition(wl.closure, cg);
    out.proper = !same_partition(swl, cg);
    return out;
}

// Walk regularity: diag(A^l) constant for 1 <= l <= max_power. Counts are
// tracked modulo two fixed large primes (with exact agreement whenever the
// values fit), so a reported failure is always exact.
inline bool is_walk_regular(const RelationMatrix& g, int max_power = -1) {
    if (!g.symmetric()) throw std::invalid_argument("walk regularity requires a symmetric matrix");
    if (!g.irreflexive()) throw std::invalid_argument("walk regularity requires an irreflexive matrix");
    int n = g.n;
    if (max_power < 0) max_power = n;
    constexpr uint64_t P1 = 0xFFFFFFFFFFFFFFC5ull;  // 2^64 - 59, prime
    constexpr uint64_t P2 = 0xFFFFFFFFFFFFFFADull;  // 2^64 - 83, prime
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t p) -> uint64_t {
        return (uint64_t)((unsigned __int128)a * b % p);
    };
    std::vector<uint64_t> m1((size_t)n * n), m2((size_t)n * n);
    for (size_t i = 0; i < m1.size(); ++i) m1[i] = m2[i] = g.entries[i];
    std::vector<uint64_t> a1 = m1, a2 = m2;
    for (int l = 1; l <= max_power; ++l) {
        if (l > 1) {
            std::vector<uint64_t> b1((size_t)n * n, 0), b2((size_t)n * n, 0);
            for (int x = 0; x < n; ++x)
                for (int z = 0; z < n; ++z) {
                    if (!g.get(x, z)) continue;
                    for (int y = 0; y < n; ++y) {
                        b1[(size_t)x * n + y] = (b1[(size_t)x * n + y] + a1[(size_t)z * n + y]) % P1;
                        b2[(size_t)x * n + y] = (b2[(size_t)x * n + y] + a2[(size_t)z * n + y]) % P2;
                    }
                }
            a1 = std::move(b1);
            a2 = std::move(b2);
        }
        for (int x = 1; x < n; ++x)
            if (a1[(size_t)x * n + x] != a1[0] || a2[(size_t)x * n + x] != a2[0]) return false;
        (void)mulmod;
    }
    return true;
}

struct IntersectionArray {
    int diameter = 0;
    std::vector<long long> b;  // b_0 .. b_{d-1}
    std::vector<long long> c;  // c_1 .. c_d

    bool operator==(const IntersectionArray& o) const = default;
};

// Distance partition check from every base vertex; returns nothing if the
// graph is regular but not distance regular.
inline std::optional<IntersectionArray> intersection_array(const RelationMatrix& g) {
    if (!g.symmetric()) throw std::invalid_argument("intersection_array requires a symmetric matrix");
    if (!g.irreflexive()) throw std::invalid_argument("intersection_array requires an irreflexive matrix");
    int n = g.n;
    std::vector<int> dist(n);
    IntersectionArray ia;
    bool first = true;
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(s);
        int d = 0;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y = 0; y < n; ++y)
                if (g.get(x, y) && dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    d = std::max(d, dist[y]);
                    q.push(y);
                }
        }
        for (int x = 0; x < n; ++x)
            if (dist[x] < 0) throw std::invalid_argument("intersection_array requires a connected graph");
        if (first) {
            ia.diameter = d;
            ia.b.assign(d, -1);
            ia.c.assign(d, -1);
        } else if (d != ia.diameter)
            return std::nullopt;
        for (int x = 0; x < n; ++x) {
            long long down = 0, up = 0;
            for (int y = 0; y < n; ++y)
                if (g.get(x, y)) {
                    if (dist[y] == dist[x] - 1) ++down;
                    if (dist[y] == dist[x] + 1) ++up;
                }
            int i = dist[x];
            if (i < ia.diameter) {
                if (ia.b[i] < 0) ia.b[i] = up;
                if (ia.b[i] != up) return std::nullopt;
            } else if (up != 0)
                return std::nullopt;
            if (i > 0) {
                if (ia.c[i - 1] < 0) ia.c[i - 1] = down;
                if (ia.c[i - 1] != down) return std::nullopt;
            }
        }
        first = false;
    }
    return ia;
}

struct SpreadReport {
    bool is_spread = false;
    bool hoffman = false;
    bool alpha = false;
};

// spread: equal-size coclique blocks; hoffman: {Id, spread, g, rest} is a
// rank-4 AS; alpha: every pair of blocks induces a disjoint union of
// complete bipartite K_{3,3} in g.
inline SpreadReport check_spread(const RelationMatrix& g, const std::vector<std::vector<int>>& blocks) {
    int n = g.n;
    std::vector<int> block_of(n, -1);
    size_t sz = blocks.empty() ? 0 : blocks[0].size();
    for (int b = 0; b < (int)blocks.size(); ++b) {
        if (blocks[b].size() != sz) throw std::invalid_argument("spread blocks must be equal-sized");
        for (int v : blocks[b]) {
            if (v < 0 || v >= n || block_of[v] != -1)
                throw std::invalid_argument("blocks do not partition the vertex set");
            block_of[v] = b;
        }
    }
    for (int v = 0; v < n; ++v)
        if (block_of[v] == -1) throw std::invalid_argument("blocks do not partition the vertex set");

    SpreadReport rep;
    rep.is_spread = true;
    for (int x = 0; x < n && rep.is_spread; ++x)
        for (int y = 0; y < n; ++y)
            if (g.get(x, y) && block_of[x] == block_of[y]) {
                rep.is_spread = false;
                break;
            }
    if (!rep.is_spread) return rep;

    ColorGraph m(n, 4);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y)
                m.at(x, y) = 0;
            else if (block_of[x] == block_of[y])
                m.at(x, y) = 1;
            else if (g.get(x, y))
                m.at(x, y) = 2;
            else
                m.at(x, y) = 3;
        }
    if (valid_partition(m)) {
        SchemeReport r = classify(m);
        rep.hoffman = r.is_cc && r.is_homogeneous;
    }

    rep.alpha = true;
    for (int b1 = 0; b1 < (int)blocks.size() && rep.alpha; ++b1)
        for (int b2 = b1 + 1; b2 < (int)blocks.size() && rep.alpha; ++b2) {
            // connected components of the induced bipartite graph must all
            // be complete bipartite with 3 + 3 vertices
            std::vector<int> verts = blocks[b1];
            verts.insert(verts.end(), blocks[b2].begin(), blocks[b2].end());
            std::map<int, int> pos;
            for (int i = 0; i < (int)verts.size(); ++i) pos[verts[i]] = i;
            std::vector<int> comp(verts.size(), -1);
            int nc = 0;
            for (int i = 0; i < (int)verts.size(); ++i) {
                if (comp[i] >= 0) continue;
                std::vector<int> stack{i};
                comp[i] = nc;
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    for (int j = 0; j < (int)verts.size(); ++j)
                        if (comp[j] < 0 && g.get(verts[u], verts[j])) {
                            comp[j] = nc;
                            stack.push_back(j);
                        }
                }
                ++nc;
            }
            for (int c = 0; c < nc && rep.alpha; ++c) {
                std::vector<int> side1, side2;
                for (int i = 0; i < (int)verts.size(); ++i)
                    if (comp[i] == c)
                        (block_of[verts[i]] == b1 ? side1 : side2).push_back(verts[i]);
                if (side1.size() != 3 || side2.size() != 3) {
                    rep.alpha = false;
                    break;
                }
                for (int u : side1)
                    for (int v : side2)
                        if (!g.get(u, v)) {
                            rep.alpha = false;
                            break;
                        }
            }
        }
    return rep;
}

}  // namespace jlab
