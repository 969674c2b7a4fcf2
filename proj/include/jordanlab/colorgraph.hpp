#pragma once

// Color graphs (partitions of Omega x Omega into colored relations),
// integer matrix algebra over the basic relations, intersection numbers,
// and classification as coherent configuration / association scheme /
// Jordan scheme.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jlab {

struct ColorGraph {
    int n = 0;
    int r = 0;
    std::vector<int> cells;  // row-major n*n, values in [0,r)

    ColorGraph() = default;
    ColorGraph(int n_, int r_) : n(n_), r(r_), cells((size_t)n_ * n_, 0) {}

    int& at(int x, int y) { return cells[(size_t)x * n + y]; }
    int at(int x, int y) const { return cells[(size_t)x * n + y]; }

    bool operator==(const ColorGraph& o) const = default;
};

struct RelationMatrix {
    int n = 0;
    std::vector<uint8_t> entries;  // row-major

    RelationMatrix() = default;
    explicit RelationMatrix(int n_) : n(n_), entries((size_t)n_ * n_, 0) {}

    uint8_t get(int x, int y) const { return entries[(size_t)x * n + y]; }
    void set(int x, int y, bool v) { entries[(size_t)x * n + y] = v ? 1 : 0; }

    bool symmetric() const {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (get(x, y) != get(y, x)) return false;
        return true;
    }
    bool irreflexive() const {
        for (int x = 0; x < n; ++x)
            if (get(x, x)) return false;
        return true;
    }
    long long edge_count() const {
        long long c = 0;
        for (auto v : entries) c += v;
        return c;
    }
};

struct IntMatrix {
    int n = 0;
    std::vector<long long> entries;

    IntMatrix() = default;
    explicit IntMatrix(int n_) : n(n_), entries((size_t)n_ * n_, 0) {}

    long long get(int x, int y) const { return entries[(size_t)x * n + y]; }
    void set(int x, int y, long long v) { entries[(size_t)x * n + y] = v; }
};

inline long long checked_add(long long a, long long b) {
    long long c;
    if (__builtin_add_overflow(a, b, &c)) throw std::overflow_error("integer matrix overflow");
    return c;
}
inline long long checked_mul(long long a, long long b) {
    long long c;
    if (__builtin_mul_overflow(a, b, &c)) throw std::overflow_error("integer matrix overflow");
    return c;
}

inline RelationMatrix relation(const ColorGraph& cg, int color) {
    if (color < 0 || color >= cg.r) throw std::invalid_argument("color out of range");
    RelationMatrix m(cg.n);
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y)
            if (cg.at(x, y) == color) m.set(x, y, true);
    return m;
}

// AB + BA, i.e. twice the Jordan product, kept integral on purpose.
inline IntMatrix symmetrized_product(const RelationMatrix& a, const RelationMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    int n = a.n;
    IntMatrix out(n);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            if (a.get(x, z))
                for (int y = 0; y < n; ++y)
                    if (b.get(z, y)) out.entries[(size_t)x * n + y]++;
            if (b.get(x, z))
                for (int y = 0; y < n; ++y)
                    if (a.get(z, y)) out.entries[(size_t)x * n + y]++;
        }
    return out;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
    int n = a.n;
    IntMatrix out(n);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            long long axz = a.get(x, z);
            if (!axz) continue;
            for (int y = 0; y < n; ++y) {
                long long v = b.get(z, y);
                if (v) out.set(x, y, checked_add(out.get(x, y), checked_mul(axz, v)));
            }
        }
    return out;
}

struct StructureTensor {
    int r = 0;
    std::vector<long long> p;  // p[i*r*r + j*r + k]

    StructureTensor() = default;
    explicit StructureTensor(int r_) : r(r_), p((size_t)r_ * r_ * r_, 0) {}

    long long get(int i, int j, int k) const { return p[((size_t)i * r + j) * r + k]; }
    long long& ref(int i, int j, int k) { return p[((size_t)i * r + j) * r + k]; }
};

struct StructureWitness {
    int i = 0, j = 0, k = 0;
    std::array<int, 2> pair_a{0, 0};
    std::array<int, 2> pair_b{0, 0};
    long long count_a = 0, count_b = 0;
};

struct StructureResult {
    bool ok = false;
    StructureTensor tensor;
    StructureWitness witness;
};

inline bool valid_partition(const ColorGraph& cg) {
    if (cg.n < 1 || cg.r < 1) return false;
    if ((long long)cg.r > (long long)cg.n * cg.n) return false;
    if ((int)cg.cells.size() != cg.n * cg.n) return false;
    std::vector<char> used(cg.r, 0);
    for (int v : cg.cells) {
        if (v < 0 || v >= cg.r) return false;
        used[v] = 1;
    }
    for (char u : used)
        if (!u) return false;
    return true;
}

// Intersection numbers; fails with a witness (two pairs of the same color
// whose (i,j)-path counts differ) if the input is not coherent.
inline StructureResult structure_constants(const ColorGraph& cg) {
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    int n = cg.n, r = cg.r;
    StructureResult res;
    res.tensor = StructureTensor(r);
    std::vector<std::array<int, 2>> rep(r, {-1, -1});
    std::vector<long long> counts((size_t)r * r);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int k = cg.at(x, y);
            std::fill(counts.begin(), counts.end(), 0);
            for (int z = 0; z < n; ++z) counts[(size_t)cg.at(x, z) * r + cg.at(z, y)]++;
            if (rep[k][0] < 0) {
                rep[k] = {x, y};
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) res.tensor.ref(i, j, k) = counts[(size_t)i * r + j];
            } else {
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j)
                        if (res.tensor.get(i, j, k) != counts[(size_t)i * r + j]) {
                            res.ok = false;
                            res.witness = {i, j, k, rep[k], {x, y},
                                           res.tensor.get(i, j, k), counts[(size_t)i * r + j]};
                            return res;
                        }
            }
        }
    res.ok = true;
    return res;
}

struct SchemeReport {
    bool valid_partition = false;
    bool reflexive_split_ok = false;
    bool transpose_closed = false;
    bool is_cc = false;
    bool is_homogeneous = false;
    bool is_symmetric = false;
    bool is_commutative = false;
    bool is_jordan_scheme = false;
    std::vector<long long> valencies;       // -1 marks an irregular color
    std::vector<std::vector<int>> fibers;   // blocks sorted by least vertex
    std::vector<int> transpose;             // color -> transpose color, or -1
    std::vector<char> reflexive;            // per color
};

namespace detail {

inline bool color_regular(const ColorGraph& cg, int c, long long& val) {
    long long row0 = -1;
    std::vector<long long> col(cg.n, 0);
    for (int x = 0; x < cg.n; ++x) {
        long long row = 0;
        for (int y = 0; y < cg.n; ++y)
            if (cg.at(x, y) == c) ++row;
        if (x == 0)
            row0 = row;
        else if (row != row0)
            return false;
    }
    for (int y = 0; y < cg.n; ++y) {
        long long cs = 0;
        for (int x = 0; x < cg.n; ++x)
            if (cg.at(x, y) == c) ++cs;
        if (cs != row0) return false;
    }
    val = row0;
    return true;
}

// M constant on each color class of cg?
inline bool constant_on_classes(const ColorGraph& cg, const IntMatrix& m) {
    std::vector<long long> val(cg.r, std::numeric_limits<long long>::min());
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y) {
            int c = cg.at(x, y);
            long long v = m.get(x, y);
            if (val[c] == std::numeric_limits<long long>::min())
                val[c] = v;
            else if (val[c] != v)
                return false;
        }
    return true;
}

}  // namespace detail

inline SchemeReport classify(const ColorGraph& cg) {
    SchemeReport rep;
    rep.valid_partition = valid_partition(cg);
    if (!rep.valid_partition) return rep;
    int n = cg.n, r = cg.r;

    // reflexive split: each color entirely on or off the diagonal
    rep.reflexive.assign(r, 0);
    std::vector<char> off(r, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int c = cg.at(x, y);
            (x == y ? rep.reflexive[c] : off[c]) = 1;
        }
    rep.reflexive_split_ok = true;
    for (int c = 0; c < r; ++c)
        if (rep.reflexive[c] && off[c]) {
            rep.reflexive_split_ok = false;
            rep.reflexive[c] = 0;
        }

    // transpose pairing
    rep.transpose.assign(r, -1);
    rep.transpose_closed = true;
    for (int x = 0; x < n && rep.transpose_closed; ++x)
        for (int y = 0; y < n; ++y) {
            int c = cg.at(x, y), ct = cg.at(y, x);
            if (rep.transpose[c] == -1)
                rep.transpose[c] = ct;
            else if (rep.transpose[c] != ct) {
                rep.transpose_closed = false;
                break;
            }
        }
    if (!rep.transpose_closed) rep.transpose.assign(r, -1);

    rep.is_symmetric = rep.transpose_closed;
    if (rep.transpose_closed)
        for (int c = 0; c < r; ++c)
            if (rep.transpose[c] != c) rep.is_symmetric = false;

    // valencies
    rep.valencies.assign(r, -1);
    for (int c = 0; c < r; ++c) {
        long long v;
        if (detail::color_regular(cg, c, v)) rep.valencies[c] = v;
    }

    // fibers induced by reflexive colors
    if (rep.reflexive_split_ok) {
        std::map<int, std::vector<int>> by_color;
        for (int x = 0; x < n; ++x) by_color[cg.at(x, x)].push_back(x);
        std::vector<std::vector<int>> fibers;
        for (auto& [c, verts] : by_color) fibers.push_back(verts);
        std::sort(fibers.begin(), fibers.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
        rep.fibers = std::move(fibers);
    }

    if (rep.reflexive_split_ok && rep.transpose_closed) {
        StructureResult sc = structure_constants(cg);
        rep.is_cc = sc.ok;
        if (sc.ok) {
            rep.is_commutative = true;
            for (int i = 0; i < r && rep.is_commutative; ++i)
                for (int j = 0; j < r && rep.is_commutative; ++j)
                    for (int k = 0; k < r; ++k)
                        if (sc.tensor.get(i, j, k) != sc.tensor.get(j, i, k)) {
                            rep.is_commutative = false;
                            break;
                        }
        }
    }
    rep.is_homogeneous = rep.reflexive_split_ok && rep.fibers.size() == 1;

    // Jordan scheme test (Prop 3.5-style criterion): symmetric, regular,
    // reflexive split, and every symmetrized product lies in the span,
    // i.e. is constant on each color class.
    rep.is_jordan_scheme = false;
    if (rep.reflexive_split_ok && rep.is_symmetric) {
        bool regular = true;
        for (int c = 0; c < r; ++c)
            if (rep.valencies[c] < 0) {
                regular = false;
                break;
            }
        if (regular) {
            std::vector<RelationMatrix> rel;
            rel.reserve(r);
            for (int c = 0; c < r; ++c) rel.push_back(relation(cg, c));
            bool jordan = true;
            for (int i = 0; i < r && jordan; ++i)
                for (int j = i; j < r && jordan; ++j)
                    if (!detail::constant_on_classes(cg, symmetrized_product(rel[i], rel[j])))
                        jordan = false;
            rep.is_jordan_scheme = jordan;
        }
    }
    return rep;
}

// Cell-wise symmetrization: the new color of (x,y) is the unordered pair
// {c(x,y), c(y,x)}; for transpose-closed inputs this merges each color with
// its transpose color. New colors numbered by first occurrence (row-major).
inline ColorGraph symmetrize(const ColorGraph& cg) {
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    ColorGraph out(cg.n, 0);
    std::map<std::pair<int, int>, int> id;
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y) {
            int a = cg.at(x, y), b = cg.at(y, x);
            std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            auto [it, fresh] = id.emplace(key, (int)id.size());
            out.at(x, y) = it->second;
        }
    out.r = (int)id.size();
    return out;
}

// Merge colors by a partition of [0,r); block order follows the least
// contained color.
inline ColorGraph merge_colors(const ColorGraph& cg, std::vector<std::vector<int>> grouping) {
    std::vector<int> map(cg.r, -1);
    for (auto& blk : grouping) std::sort(blk.begin(), blk.end());
    std::sort(grouping.begin(), grouping.end());
    for (int b = 0; b < (int)grouping.size(); ++b)
        for (int c : grouping[b]) {
            if (c < 0 || c >= cg.r || map[c] != -1)
                throw std::invalid_argument("grouping is not a partition of the color set");
            map[c] = b;
        }
    for (int c = 0; c < cg.r; ++c)
        if (map[c] == -1) throw std::invalid_argument("grouping is not a partition of the color set");
    ColorGraph out(cg.n, (int)grouping.size());
    for (size_t i = 0; i < cg.cells.size(); ++i) out.cells[i] = map[cg.cells[i]];
    return out;
}

struct Restriction {
    ColorGraph graph;
    std::vector<int> color_map;  // old color -> new color or -1 if dropped
    std::vector<int> vertices;   // new vertex -> old vertex
};

inline Restriction restrict_graph(const ColorGraph& cg, std::vector<int> subset) {
    if (subset.empty()) throw std::invalid_argument("empty vertex subset");
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (int v : subset)
        if (v < 0 || v >= cg.n) throw std::invalid_argument("subset vertex out of range");
    int m = (int)subset.size();
    Restriction res;
    res.vertices = subset;
    res.color_map.assign(cg.r, -1);
    ColorGraph out(m, 0);
    int next = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int c = cg.at(subset[i], subset[j]);
            if (res.color_map[c] == -1) res.color_map[c] = next++;
            out.at(i, j) = res.color_map[c];
        }
    out.r = next;
    res.graph = std::move(out);
    return res;
}

// Canonical color renumbering: reflexive colors first (by least diagonal
// vertex), then the rest by (valency, least nonzero row, first occurrence).
inline ColorGraph normalize_colors(const ColorGraph& cg) {
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    int n = cg.n, r = cg.r;
    struct Key {
        int anti;
        long long a;
        std::vector<uint8_t> row;
        int first;
        int color;
        bool operator<(const Key& o) const {
            return std::tie(anti, a, row, first) < std::tie(o.anti, o.a, o.row, o.first);
        }
    };
    std::vector<char> refl(r, 0), off(r, 0);
    std::vector<int> first(r, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int c = cg.at(x, y);
            (x == y ? refl[c] : off[c]) = 1;
            if (first[c] < 0) first[c] = x * n + y;
        }
    std::vector<Key> keys;
    for (int c = 0; c < r; ++c) {
        Key k;
        k.color = c;
        k.first = first[c];
        if (refl[c] && !off[c]) {
            k.anti = 0;
            int least = n;
            for (int x = 0; x < n; ++x)
                if (cg.at(x, x) == c) {
                    least = x;
                    break;
                }
            k.a = least;
        } else {
            k.anti = 1;
            long long v;
            k.a = detail::color_regular(cg, c, v) ? v : std::numeric_limits<long long>::max();
            for (int x = 0; x < n; ++x) {
                std::vector<uint8_t> row(n, 0);
                bool nonzero = false;
                for (int y = 0; y < n; ++y)
                    if (cg.at(x, y) == c) {
                        row[y] = 1;
                        nonzero = true;
                    }
                if (nonzero && (k.row.empty() || row < k.row)) k.row = row;
            }
        }
        keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end());
    std::vector<int> map(r);
    for (int i = 0; i < r; ++i) map[keys[i].color] = i;
    ColorGraph out(n, r);
    for (size_t i = 0; i < cg.cells.size(); ++i) out.cells[i] = map[cg.cells[i]];
    return out;
}

// Same partition of Omega x Omega, ignoring color labels?
inline bool same_partition(const ColorGraph& a, const ColorGraph& b) {
    if (a.n != b.n) return false;
    std::vector<int> fwd(a.r, -1), bwd(b.r, -1);
    for (size_t i = 0; i < a.cells.size(); ++i) {
        int ca = a.cells[i], cb = b.cells[i];
        if (fwd[ca] == -1) fwd[ca] = cb;
        if (bwd[cb] == -1) bwd[cb] = ca;
        if (fwd[ca] != cb || bwd[cb] != ca) return false;
    }
    return true;
}

// Does every class of `fine` lie inside one class of `coarse`?
inline bool refines(const ColorGraph& fine, const ColorGraph& coarse) {
    if (fine.n != coarse.n) return false;
    std::vector<int> img(fine.r, -1);
    for (size_t i = 0; i < fine.cells.size(); ++i) {
        int cf = fine.cells[i], cc = coarse.cells[i];
        if (img[cf] == -1) img[cf] = cc;
        if (img[cf] != cc) return false;
    }
    return true;
}

inline ColorGraph from_rows(const std::vector<std::vector<int>>& rows) {
    int n = (int)rows.size();
    int r = 0;
    ColorGraph cg(n, 1);
    for (int x = 0; x < n; ++x) {
        if ((int)rows[x].size() != n) throw std::invalid_argument("ragged matrix");
        for (int y = 0; y < n; ++y) {
            cg.at(x, y) = rows[x][y];
            r = std::max(r, rows[x][y] + 1);
        }
    }
    cg.r = r;
    if (!valid_partition(cg)) throw std::invalid_argument("not a valid partition");
    return cg;
}

inline ColorGraph from_graph(const RelationMatrix& g, bool with_diagonal_color = true) {
    ColorGraph cg(g.n, with_diagonal_color ? 3 : 2);
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y) {
            if (with_diagonal_color && x == y)
                cg.at(x, y) = 0;
            else
                cg.at(x, y) = g.get(x, y) ? (with_diagonal_color ? 1 : 0) : (with_diagonal_color ? 2 : 1);
        }
    // degenerate cases: drop unused colors
    std::vector<char> used(cg.r, 0);
    for (int v : cg.cells) used[v] = 1;
    std::vector<int> map(cg.r, -1);
    int next = 0;
    for (int c = 0; c < cg.r; ++c)
        if (used[c]) map[c] = next++;
    for (auto& v : cg.cells) v = map[v];
    cg.r = next;
    return cg;
}

}  // namespace jlab
