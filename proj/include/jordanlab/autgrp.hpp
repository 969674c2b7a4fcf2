#pragma once

// Color-graph automorphism and isomorphism search (individualization and
// refinement), 2-orbit color graphs, canonical forms, algebraic (tensor)
// automorphisms and the color automorphism group.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "colorgraph.hpp"
#include "perm.hpp"
#include "stabilize.hpp"

namespace jlab {

// Orbits of the group on ordered pairs, as a color graph in canonical
// color order.
inline ColorGraph two_orbits(const PermGroup& g) {
    int n = g.n;
    if (n < 1) throw std::invalid_argument("empty domain");
    ColorGraph cg(n, 0);
    std::vector<int> color((size_t)n * n, -1);
    int next = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (color[(size_t)x * n + y] >= 0) continue;
            int c = next++;
            std::vector<std::pair<int, int>> queue{{x, y}};
            color[(size_t)x * n + y] = c;
            for (size_t q = 0; q < queue.size(); ++q)
                for (auto& gen : g.gens) {
                    int u = gen[queue[q].first], v = gen[queue[q].second];
                    if (color[(size_t)u * n + v] < 0) {
                        color[(size_t)u * n + v] = c;
                        queue.push_back({u, v});
                    }
                }
        }
    cg.r = next;
    for (size_t i = 0; i < cg.cells.size(); ++i) cg.cells[i] = color[i];
    return normalize_colors(cg);
}

namespace detail {

// One-dimensional refinement of a vertex coloring against the cell matrix:
// sig(x) = (vc(x), sorted multiset over y of (vc(y), m(x,y), m(y,x))).
// Renumbering follows the lexicographic order of signatures.
using VSig = std::pair<int, std::vector<std::array<int, 3>>>;

inline VSig vertex_sig(const ColorGraph& m, const std::vector<int>& vc, int x) {
    VSig s;
    s.first = vc[x];
    s.second.resize(m.n);
    for (int y = 0; y < m.n; ++y) s.second[y] = {vc[y], m.at(x, y), m.at(y, x)};
    std::sort(s.second.begin(), s.second.end());
    return s;
}

inline int refine_single(const ColorGraph& m, std::vector<int>& vc) {
    int classes = 0;
    {
        std::set<int> s(vc.begin(), vc.end());
        classes = (int)s.size();
    }
    while (true) {
        std::map<VSig, int> ids;
        std::vector<VSig> sigs(m.n);
        for (int x = 0; x < m.n; ++x) {
            sigs[x] = vertex_sig(m, vc, x);
            ids.emplace(sigs[x], 0);
        }
        int next = 0;
        for (auto& [sig, id] : ids) id = next++;
        for (int x = 0; x < m.n; ++x) vc[x] = ids[sigs[x]];
        if (next == classes) return classes;
        classes = next;
    }
}

// Joint refinement of two colorings with a shared renumbering; fails when
// the signature multisets diverge (then no color-preserving isomorphism
// matching the colorings exists).
inline bool refine_pair(const ColorGraph& ma, std::vector<int>& va,
                        const ColorGraph& mb, std::vector<int>& vb) {
    if (ma.n != mb.n) return false;
    int n = ma.n;
    int classes = -1;
    while (true) {
        std::map<VSig, int> ids;
        std::vector<VSig> sa(n), sb(n);
        for (int x = 0; x < n; ++x) {
            sa[x] = vertex_sig(ma, va, x);
            sb[x] = vertex_sig(mb, vb, x);
            ids.emplace(sa[x], 0);
            ids.emplace(sb[x], 0);
        }
        int next = 0;
        for (auto& [sig, id] : ids) id = next++;
        for (int x = 0; x < n; ++x) {
            va[x] = ids[sa[x]];
            vb[x] = ids[sb[x]];
        }
        std::vector<int> ca(next, 0), cb(next, 0);
        for (int x = 0; x < n; ++x) {
            ca[va[x]]++;
            cb[vb[x]]++;
        }
        if (ca != cb) return false;
        if (next == classes) return true;
        classes = next;
    }
}

// Backtracking search for a vertex bijection p with
// mb(p(x), p(y)) = ma(x, y) that respects the given vertex colorings.
inline std::optional<Perm> iso_search(const ColorGraph& ma, std::vector<int> va,
                                      const ColorGraph& mb, std::vector<int> vb) {
    if (!refine_pair(ma, va, mb, vb)) return std::nullopt;
    int n = ma.n;
    int classes = 0;
    for (int x = 0; x < n; ++x) classes = std::max(classes, va[x] + 1);
    // smallest non-singleton class (ties by class id)
    std::vector<int> count(classes, 0);
    for (int x = 0; x < n; ++x) count[va[x]]++;
    int target = -1;
    for (int c = 0; c < classes; ++c)
        if (count[c] > 1 && (target < 0 || count[c] < count[target])) target = c;
    if (target < 0) {
        // discrete: the colorings define the only candidate bijection
        Perm p(n, -1);
        std::vector<int> where(classes, -1);
        for (int x = 0; x < n; ++x) where[vb[x]] = x;
        for (int x = 0; x < n; ++x) p[x] = where[va[x]];
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (mb.at(p[x], p[y]) != ma.at(x, y)) return std::nullopt;
        return p;
    }
    int v = -1;
    for (int x = 0; x < n; ++x)
        if (va[x] == target) {
            v = x;
            break;
        }
    for (int u = 0; u < n; ++u) {
        if (vb[u] != target) continue;
        std::vector<int> va2 = va, vb2 = vb;
        va2[v] = classes;
        vb2[u] = classes;
        if (auto p = iso_search(ma, std::move(va2), mb, std::move(vb2))) return p;
    }
    return std::nullopt;
}

}  // namespace detail

// Color-preserving automorphism group, via individualization-refinement on
// the WL closure (which has the same automorphisms and refines better).
inline PermGroup automorphism_group(const ColorGraph& cg) {
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    ColorGraph m = wl_closure(cg).closure;
    int n = m.n;
    std::vector<Perm> gens;
    std::vector<int> vc(n, 0);
    while (true) {
        int classes = detail::refine_single(m, vc);
        std::vector<int> count(classes, 0);
        for (int x = 0; x < n; ++x) count[vc[x]]++;
        int target = -1;
        for (int c = 0; c < classes; ++c)
            if (count[c] > 1) {
                target = c;
                break;
            }
        if (target < 0) break;
        int v = -1;
        for (int x = 0; x < n; ++x)
            if (vc[x] == target) {
                v = x;
                break;
            }
        for (int u = 0; u < n; ++u) {
            if (u == v || vc[u] != target) continue;
            std::vector<int> va = vc, vb = vc;
            va[v] = classes;
            vb[u] = classes;
            if (auto p = detail::iso_search(m, std::move(va), m, std::move(vb)))
                gens.push_back(std::move(*p));
        }
        vc[v] = classes;  // descend into the point stabilizer
    }
    return PermGroup(n, gens);
}

struct IsoWitness {
    Perm vertex_map;  // vertex of a -> vertex of b
    Perm color_map;   // color of a -> color of b
};

enum class IsoMode { ColorPreserving, ColorPermuting };

namespace detail {

// Invariant of a color used to restrict color bijection candidates.
struct ColorInvariant {
    bool on_diag = false;
    bool off_diag = false;
    bool symmetric = true;
    long long valency = -1;
    long long edges = 0;

    auto tie() const { return std::tie(on_diag, off_diag, symmetric, valency, edges); }
    bool operator==(const ColorInvariant& o) const { return tie() == o.tie(); }
};

inline std::vector<ColorInvariant> color_invariants(const ColorGraph& cg) {
    std::vector<ColorInvariant> inv(cg.r);
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y) {
            int c = cg.at(x, y);
            (x == y ? inv[c].on_diag : inv[c].off_diag) = true;
            inv[c].edges++;
            if (cg.at(y, x) != c) inv[c].symmetric = false;
        }
    for (int c = 0; c < cg.r; ++c) {
        long long v;
        if (detail::color_regular(cg, c, v)) inv[c].valency = v;
    }
    return inv;
}

inline std::optional<Perm> color_preserving_iso(const ColorGraph& a, const ColorGraph& b) {
    if (a.n != b.n || a.r != b.r) return std::nullopt;
    return iso_search(a, std::vector<int>(a.n, 0), b, std::vector<int>(b.n, 0));
}

inline std::optional<IsoWitness> color_permuting_iso(const ColorGraph& a, const ColorGraph& b) {
    if (a.n != b.n || a.r != b.r) return std::nullopt;
    auto ia = color_invariants(a), ib = color_invariants(b);
    {
        auto sa = ia, sb = ib;
        auto lt = [](const ColorInvariant& x, const ColorInvariant& y) { return x.tie() < y.tie(); };
        std::sort(sa.begin(), sa.end(), lt);
        std::sort(sb.begin(), sb.end(), lt);
        if (!std::equal(sa.begin(), sa.end(), sb.begin())) return std::nullopt;
    }
    int r = a.r;
    Perm sigma(r, -1);
    std::vector<char> used(r, 0);
    std::optional<IsoWitness> result;
    auto dfs = [&](auto&& self, int c) -> bool {
        if (c == r) {
            ColorGraph rel = a;
            for (auto& v : rel.cells) v = sigma[v];
            if (auto p = color_preserving_iso(rel, b)) {
                result = IsoWitness{std::move(*p), sigma};
                return true;
            }
            return false;
        }
        for (int d = 0; d < r; ++d) {
            if (used[d] || !(ia[c] == ib[d])) continue;
            sigma[c] = d;
            used[d] = 1;
            if (self(self, c + 1)) return true;
            used[d] = 0;
            sigma[c] = -1;
        }
        return false;
    };
    dfs(dfs, 0);
    return result;
}

}  // namespace detail

// Vertex (and in permuting mode, color) bijection carrying a onto b, if any.
inline std::optional<IsoWitness> isomorphic(const ColorGraph& a, const ColorGraph& b, IsoMode mode) {
    if (!valid_partition(a) || !valid_partition(b)) throw std::invalid_argument("not a valid partition");
    if (mode == IsoMode::ColorPreserving) {
        if (auto p = detail::color_preserving_iso(a, b))
            return IsoWitness{std::move(*p), perm_identity(a.r)};
        return std::nullopt;
    }
    return detail::color_permuting_iso(a, b);
}

namespace detail {

// Lexicographically least row-major cell matrix over the leaves of the
// individualization-refinement tree. The refinement renumbering and the
// branch-cell choice are both invariant under vertex relabeling, so the
// result is a canonical representative of the color-preserving class.
inline void canonical_labeling_min(const ColorGraph& g, const ColorGraph& refm,
                                   std::vector<int>& best) {
    int n = g.n;
    auto rec = [&](auto&& self, std::vector<int> vc) -> void {
        int classes = refine_single(refm, vc);
        std::vector<int> count(classes, 0);
        for (int x = 0; x < n; ++x) count[vc[x]]++;
        int target = -1;
        for (int c = 0; c < classes; ++c)
            if (count[c] > 1 && (target < 0 || count[c] < count[target])) target = c;
        if (target < 0) {
            std::vector<int> pos(classes);
            for (int x = 0; x < n; ++x) pos[vc[x]] = x;
            std::vector<int> cells((size_t)n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) cells[(size_t)i * n + j] = g.at(pos[i], pos[j]);
            if (best.empty() || cells < best) best = std::move(cells);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (vc[v] != target) continue;
            std::vector<int> vc2 = vc;
            vc2[v] = classes;
            self(self, std::move(vc2));
        }
    };
    rec(rec, std::vector<int>(n, 0));
}

}  // namespace detail

// Canonical form under combined vertex and color permutation: for every
// color bijection preserving the basic color invariants, relabel and take
// the least individualization-refinement leaf matrix; the overall minimum
// is returned. Two color graphs are color-permuting isomorphic exactly
// when their canonical forms are equal.
inline ColorGraph canonical_form(const ColorGraph& cg) {
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    int n = cg.n, r = cg.r;
    auto inv = detail::color_invariants(cg);
    // Each invariant class gets a fixed block of target indices determined
    // by the sorted order of the invariants, so isomorphic inputs search
    // the same set of recolored matrices regardless of input color order.
    std::vector<int> order(r);
    for (int c = 0; c < r; ++c) order[c] = c;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return inv[x].tie() < inv[y].tie(); });
    std::vector<std::pair<int, int>> slot(r);  // target index range per color
    for (int i = 0; i < r;) {
        int j = i;
        while (j < r && inv[order[j]].tie() == inv[order[i]].tie()) ++j;
        for (int t = i; t < j; ++t) slot[order[t]] = {i, j};
        i = j;
    }
    std::vector<int> best;
    Perm sigma(r, -1);
    std::vector<char> used(r, 0);
    auto dfs = [&](auto&& self, int c) -> void {
        if (c == r) {
            ColorGraph rel = cg;
            for (auto& v : rel.cells) v = sigma[v];
            ColorGraph refm = detail::wl_raw(rel);
            detail::canonical_labeling_min(rel, refm, best);
            return;
        }
        for (int d = slot[c].first; d < slot[c].second; ++d) {
            if (used[d]) continue;
            sigma[c] = d;
            used[d] = 1;
            self(self, c + 1);
            used[d] = 0;
        }
    };
    dfs(dfs, 0);
    ColorGraph out(n, r);
    out.cells = best;
    return out;
}

// Structure tensor used for algebraic automorphisms: intersection numbers
// for coherent configurations, symmetrized-product coefficients for Jordan
// schemes.
inline StructureTensor scheme_tensor(const ColorGraph& cg) {
    SchemeReport rep = classify(cg);
    if (rep.is_cc) {
        StructureResult sc = structure_constants(cg);
        return sc.tensor;
    }
    if (rep.is_jordan_scheme) {
        int r = cg.r;
        StructureTensor t(r);
        std::vector<RelationMatrix> rel;
        rel.reserve(r);
        for (int c = 0; c < r; ++c) rel.push_back(relation(cg, c));
        std::vector<std::pair<int, int>> first(r, {-1, -1});
        for (int x = 0; x < cg.n; ++x)
            for (int y = 0; y < cg.n; ++y)
                if (first[cg.at(x, y)].first < 0) first[cg.at(x, y)] = {x, y};
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                IntMatrix m = symmetrized_product(rel[i], rel[j]);
                for (int k = 0; k < r; ++k) {
                    long long v = m.get(first[k].first, first[k].second);
                    t.ref(i, j, k) = v;
                    t.ref(j, i, k) = v;
                }
            }
        return t;
    }
    throw std::domain_error("scheme_tensor requires a coherent configuration or Jordan scheme");
}

// All color permutations preserving valencies, reflexivity and the tensor.
inline std::vector<Perm> algebraic_automorphisms(const StructureTensor& t,
                                                 const std::vector<long long>& valencies,
                                                 const std::vector<char>& reflexive = {}) {
    int r = t.r;
    if (r > 24) throw std::runtime_error("algebraic automorphism search limited to rank <= 24");
    if ((int)valencies.size() != r) throw std::invalid_argument("valency list has wrong length");
    std::vector<char> refl = reflexive;
    if (refl.empty()) refl.assign(r, 0);
    if ((int)refl.size() != r) throw std::invalid_argument("reflexive list has wrong length");

    std::vector<Perm> out;
    Perm sigma(r, -1);
    std::vector<char> used(r, 0);
    auto compatible = [&](int c) {
        // verify all tensor triples whose indices are all assigned and
        // involve color c
        for (int i = 0; i < r; ++i) {
            if (sigma[i] < 0) continue;
            for (int j = 0; j < r; ++j) {
                if (sigma[j] < 0) continue;
                for (int k = 0; k < r; ++k) {
                    if (sigma[k] < 0 || (i != c && j != c && k != c)) continue;
                    if (t.get(sigma[i], sigma[j], sigma[k]) != t.get(i, j, k)) return false;
                }
            }
        }
        return true;
    };
    auto dfs = [&](auto&& self, int c) -> void {
        if (c == r) {
            out.push_back(sigma);
            return;
        }
        for (int d = 0; d < r; ++d) {
            if (used[d] || valencies[d] != valencies[c] || refl[d] != refl[c]) continue;
            sigma[c] = d;
            used[d] = 1;
            if (compatible(c)) self(self, c + 1);
            used[d] = 0;
            sigma[c] = -1;
        }
    };
    dfs(dfs, 0);
    return out;
}

inline std::vector<Perm> algebraic_automorphisms(const ColorGraph& cg) {
    SchemeReport rep = classify(cg);
    return algebraic_automorphisms(scheme_tensor(cg), rep.valencies, rep.reflexive);
}

// Vertex permutations inducing any color permutation: generated by the
// color-preserving automorphisms together with one realizing vertex map per
// realizable algebraic automorphism.
inline PermGroup color_automorphism_group(const ColorGraph& cg) {
    PermGroup aut = automorphism_group(cg);
    std::vector<Perm> gens = aut.gens;
    for (auto& sigma : algebraic_automorphisms(cg)) {
        if (perm_is_identity(sigma)) continue;
        ColorGraph rel = cg;
        for (auto& v : rel.cells) v = sigma[v];
        if (auto p = detail::color_preserving_iso(rel, cg)) gens.push_back(std::move(*p));
    }
    return PermGroup(cg.n, gens);
}

// A configuration is Schurian when it coincides with the 2-orbit color
// graph of its own automorphism group.
inline bool is_schurian(const ColorGraph& cg) {
    PermGroup aut = automorphism_group(cg);
    ColorGraph orb = two_orbits(aut);
    return orb.r == cg.r;
}

}  // namespace jlab
