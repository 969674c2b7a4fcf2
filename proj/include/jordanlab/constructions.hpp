#pragma once

// Built-in matrices, classic graphs, PSL(2,q) one-third-point schemes,
// Gunnells graphs/schemes, WFDF schemes, pregraphs and bridge switching,
// and the rank-6 multiplication-table verifier.

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorgraph.hpp"
#include "field.hpp"

namespace jlab {

namespace detail {

inline ColorGraph builtin_j15() {
    static const int rows[15][15] = {
        {0, 1, 1, 2, 3, 4, 2, 3, 4, 2, 3, 4, 2, 3, 4},
        {1, 0, 1, 3, 4, 2, 3, 4, 2, 3, 4, 2, 3, 4, 2},
        {1, 1, 0, 4, 2, 3, 4, 2, 3, 4, 2, 3, 4, 2, 3},
        {2, 3, 4, 0, 1, 1, 3, 2, 4, 2, 4, 3, 4, 3, 2},
        {3, 4, 2, 1, 0, 1, 2, 4, 3, 4, 3, 2, 3, 2, 4},
        {4, 2, 3, 1, 1, 0, 4, 3, 2, 3, 2, 4, 2, 4, 3},
        {2, 3, 4, 3, 2, 4, 0, 1, 1, 4, 3, 2, 2, 4, 3},
        {3, 4, 2, 2, 4, 3, 1, 0, 1, 3, 2, 4, 4, 3, 2},
        {4, 2, 3, 4, 3, 2, 1, 1, 0, 2, 4, 3, 3, 2, 4},
        {2, 3, 4, 2, 4, 3, 4, 3, 2, 0, 1, 1, 3, 2, 4},
        {3, 4, 2, 4, 3, 2, 3, 2, 4, 1, 0, 1, 2, 4, 3},
        {4, 2, 3, 3, 2, 4, 2, 4, 3, 1, 1, 0, 4, 3, 2},
        {2, 3, 4, 4, 3, 2, 2, 4, 3, 3, 2, 4, 0, 1, 1},
        {3, 4, 2, 3, 2, 4, 4, 3, 2, 2, 4, 3, 1, 0, 1},
        {4, 2, 3, 2, 4, 3, 3, 2, 4, 4, 3, 2, 1, 1, 0},
    };
    std::vector<std::vector<int>> v(15, std::vector<int>(15));
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 15; ++j) v[i][j] = rows[i][j];
    return from_rows(v);
}

inline ColorGraph builtin_s12() {
    static const int rows[12][12] = {
        {0, 1, 1, 2, 4, 3, 3, 4, 4, 3, 3, 4},
        {1, 0, 1, 3, 2, 4, 4, 4, 3, 4, 3, 3},
        {1, 1, 0, 4, 3, 2, 4, 3, 4, 3, 4, 3},
        {2, 3, 4, 0, 1, 1, 4, 3, 3, 4, 3, 4},
        {4, 2, 3, 1, 0, 1, 3, 4, 3, 3, 4, 4},
        {3, 4, 2, 1, 1, 0, 3, 3, 4, 4, 4, 3},
        {3, 4, 4, 4, 3, 3, 0, 1, 1, 2, 3, 4},
        {4, 4, 3, 3, 4, 3, 1, 0, 1, 4, 2, 3},
        {4, 3, 4, 3, 3, 4, 1, 1, 0, 3, 4, 2},
        {3, 4, 3, 4, 3, 4, 2, 4, 3, 0, 1, 1},
        {3, 3, 4, 3, 4, 4, 3, 2, 4, 1, 0, 1},
        {4, 3, 3, 4, 4, 3, 4, 3, 2, 1, 1, 0},
    };
    std::vector<std::vector<int>> v(12, std::vector<int>(12));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) v[i][j] = rows[i][j];
    return from_rows(v);
}

// Two triangles (spread) joined by three perfect matchings: the unique
// rank-5 Jordan scheme of order 6.
inline ColorGraph builtin_shah6() {
    static const int rows[6][6] = {
        {0, 1, 1, 2, 3, 4},
        {1, 0, 1, 4, 2, 3},
        {1, 1, 0, 3, 4, 2},
        {2, 4, 3, 0, 1, 1},
        {3, 2, 4, 1, 0, 1},
        {4, 3, 2, 1, 1, 0},
    };
    std::vector<std::vector<int>> v(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) v[i][j] = rows[i][j];
    return from_rows(v);
}

}  // namespace detail

// Petersen graph: 2-subsets of {0..4} in lexicographic order, adjacent
// when disjoint.
inline RelationMatrix petersen_graph() {
    std::vector<std::pair<int, int>> verts;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) verts.push_back({a, b});
    RelationMatrix g(10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            auto [a, b] = verts[i];
            auto [c, d] = verts[j];
            if (a != c && a != d && b != c && b != d) g.set(i, j, true);
        }
    return g;
}

// Heawood graph: incidence graph of the Fano plane with lines
// {i, i+1, i+3} mod 7; points are vertices 0..6, lines 7..13.
inline RelationMatrix heawood_graph() {
    RelationMatrix g(14);
    for (int i = 0; i < 7; ++i)
        for (int d : {0, 1, 3}) {
            int point = (i + d) % 7;
            g.set(point, 7 + i, true);
            g.set(7 + i, point, true);
        }
    return g;
}

inline ColorGraph builtin(const std::string& name) {
    if (name == "j15") return detail::builtin_j15();
    if (name == "s12") return detail::builtin_s12();
    if (name == "shah6") return detail::builtin_shah6();
    if (name == "petersen") return from_graph(petersen_graph());
    if (name == "heawood") return from_graph(heawood_graph());
    throw std::invalid_argument("unknown builtin name: " + name);
}

struct LineGraphResult {
    RelationMatrix graph;
    std::vector<std::pair<int, int>> edges;  // vertex of line graph -> endpoints
};

inline LineGraphResult line_graph(const RelationMatrix& g) {
    if (!g.symmetric() || !g.irreflexive())
        throw std::invalid_argument("line graph requires a simple undirected graph");
    LineGraphResult res;
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (g.get(a, b)) res.edges.push_back({a, b});
    if (res.edges.empty()) throw std::invalid_argument("graph has no edges");
    int m = (int)res.edges.size();
    res.graph = RelationMatrix(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            auto [a, b] = res.edges[i];
            auto [c, d] = res.edges[j];
            if (a == c || a == d || b == c || b == d) res.graph.set(i, j, true);
        }
    return res;
}

struct Rank6Labeling {
    std::array<int, 3> thin{-1, -1, -1};   // R_0 (reflexive), R_1, R_2
    std::array<int, 3> thick{-1, -1, -1};  // Delta_0, Delta_1, Delta_2
    long long m = 0;                       // thick valency
};

struct Rank6Result {
    bool ok = false;
    Rank6Labeling labeling;
    std::string error;
};

// Checks the rank-6 multiplication table
//   R_i R_j = R_{i+j}
//   R_i D_j = D_{i+j},  D_j R_i = D_{j-i}
//   D_i D_j = m R_{i-j} + (m-1)/3 (D_0 + D_1 + D_2)
// over all candidate labelings (thin radical auto-detected, at most
// 2 * 3! assignments); indices mod 3.
inline Rank6Result verify_rank6_table(const ColorGraph& cg) {
    Rank6Result res;
    if (!valid_partition(cg)) {
        res.error = "not a valid partition";
        return res;
    }
    if (cg.r != 6) {
        res.error = "rank is not 6";
        return res;
    }
    SchemeReport rep = classify(cg);
    if (!rep.is_cc || !rep.is_homogeneous) {
        res.error = "not a homogeneous coherent configuration";
        return res;
    }
    std::vector<int> thin, thick;
    int refl = -1;
    long long m = -1;
    for (int c = 0; c < 6; ++c) {
        if (rep.reflexive[c])
            refl = c;
        else if (rep.valencies[c] == 1)
            thin.push_back(c);
        else {
            if (m < 0) m = rep.valencies[c];
            if (rep.valencies[c] != m) {
                res.error = "thick valencies differ";
                return res;
            }
            thick.push_back(c);
        }
    }
    if (thick.empty() || refl < 0 || thin.size() != 2 || thick.size() != 3) {
        res.error = thick.empty() ? "no thick colors" : "thin/thick profile is not 1,1,1,m,m,m";
        return res;
    }
    if (m % 3 != 1) {
        res.error = "thick valency m with 3 not dividing m-1";
        return res;
    }
    StructureResult sc = structure_constants(cg);
    auto coeff = [&](int i, int j, int k) { return sc.tensor.get(i, j, k); };
    std::array<int, 3> R{}, D{};
    R[0] = refl;
    std::string first_error;
    auto try_labeling = [&]() -> bool {
        std::string err;
        auto expect = [&](int a, int b, const std::vector<std::pair<int, long long>>& want,
                          const char* desc) {
            if (!err.empty()) return;
            std::vector<long long> w(6, 0);
            for (auto& [c, v] : want) w[c] = v;
            for (int k = 0; k < 6; ++k)
                if (coeff(a, b, k) != w[k]) {
                    err = std::string("identity violated: ") + desc;
                    return;
                }
        };
        for (int i = 0; i < 3 && err.empty(); ++i)
            for (int j = 0; j < 3 && err.empty(); ++j) {
                expect(R[i], R[j], {{R[(i + j) % 3], 1}}, "R_i R_j = R_{i+j}");
                expect(R[i], D[j], {{D[(i + j) % 3], 1}}, "R_i D_j = D_{i+j}");
                expect(D[j], R[i], {{D[((j - i) % 3 + 3) % 3], 1}}, "D_j R_i = D_{j-i}");
                expect(D[i], D[j],
                       {{R[((i - j) % 3 + 3) % 3], m},
                        {D[0], (m - 1) / 3},
                        {D[1], (m - 1) / 3},
                        {D[2], (m - 1) / 3}},
                       "D_i D_j = m R_{i-j} + (m-1)/3 (D_0+D_1+D_2)");
            }
        if (err.empty()) return true;
        if (first_error.empty()) first_error = err;
        return false;
    };
    std::array<std::array<int, 2>, 2> thin_orders{{{thin[0], thin[1]}, {thin[1], thin[0]}}};
    for (auto& to : thin_orders) {
        R[1] = to[0];
        R[2] = to[1];
        std::array<int, 3> idx{0, 1, 2};
        do {
            D = {thick[idx[0]], thick[idx[1]], thick[idx[2]]};
            if (try_labeling()) {
                res.ok = true;
                res.labeling.thin = R;
                res.labeling.thick = D;
                res.labeling.m = m;
                return res;
            }
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    res.error = first_error.empty() ? "no valid labeling" : first_error;
    return res;
}

struct OtScheme {
    ColorGraph graph;
    Rank6Labeling labeling;
};

// Rank-6 scheme on the one-third quasi-projective points: classes of
// nonzero vectors of F_q^2 under the index-3 subgroup Z_l of the
// multiplicative group, l = (q-1)/3. Thin colors follow scalar cosets,
// thick colors follow determinant cosets.
inline OtScheme psl2_ot_scheme(int q) {
    if (q < 4) throw std::invalid_argument("q must be a prime power congruent to 1 mod 3, q >= 4");
    FiniteField F(q);
    if ((q - 1) % 3 != 0) throw std::invalid_argument("q must be congruent to 1 mod 3");
    auto coset = [&](int t) { return F.dlog(t) % 3; };
    // class representative: lexicographically least scalar multiple by Z_l
    std::map<std::pair<int, int>, int> rep_index;
    std::vector<std::pair<int, int>> reps;
    auto rep_of = [&](int a, int b) {
        std::pair<int, int> best{-1, -1};
        for (int t = 1; t < q; ++t) {
            if (coset(t) != 0) continue;
            std::pair<int, int> cand{F.mul(t, a), F.mul(t, b)};
            if (best.first < 0 || cand < best) best = cand;
        }
        return best;
    };
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            auto r = rep_of(a, b);
            if (!rep_index.count(r)) {
                rep_index.emplace(r, 0);
            }
        }
    {
        int next = 0;
        for (auto& [r, idx] : rep_index) {
            idx = next++;
            reps.push_back(r);
        }
    }
    int n = (int)reps.size();
    if (n != 3 * (q + 1)) throw std::logic_error("unexpected number of ot-points");
    ColorGraph cg(n, 6);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [a, b] = reps[i];
            auto [c, d] = reps[j];
            int det = F.sub(F.mul(a, d), F.mul(b, c));
            if (det == 0) {
                int lambda = a != 0 ? F.mul(c, F.inv(a)) : F.mul(d, F.inv(b));
                cg.at(i, j) = coset(lambda);  // R_k, with R_0 = identity
            } else {
                cg.at(i, j) = 3 + coset(det);  // Delta_k
            }
        }
    OtScheme out;
    out.graph = cg;
    Rank6Result v = verify_rank6_table(cg);
    if (!v.ok) throw std::logic_error("ot-point scheme fails the rank-6 table: " + v.error);
    out.labeling = v.labeling;
    return out;
}

// Gunnells graph: classes of nonzero vectors of F_q^2 under +-1; adjacency
// when det(u, v) = +-alpha.
inline RelationMatrix gunnells_graph(int q, int alpha) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime");
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) throw std::invalid_argument("q must be an odd prime");
    if (alpha % q == 0) throw std::invalid_argument("alpha must be nonzero mod q");
    alpha = ((alpha % q) + q) % q;
    std::vector<std::pair<int, int>> reps;
    std::map<std::pair<int, int>, int> index;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            std::pair<int, int> v{a, b}, w{(q - a) % q, (q - b) % q};
            auto r = std::min(v, w);
            if (!index.count(r)) {
                index.emplace(r, (int)reps.size());
                reps.push_back(r);
            }
        }
    int n = (int)reps.size();
    RelationMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            auto [a, b] = reps[i];
            auto [c, d] = reps[j];
            int det = ((a * d - b * c) % q + q) % q;
            if (det == alpha || det == (q - alpha) % q) g.set(i, j, true);
        }
    return g;
}

// Full Gunnells color graph: identity, the proportionality spread, and one
// color per +- pair of determinant values.
inline ColorGraph gunnells_scheme(int q) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime");
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) throw std::invalid_argument("q must be an odd prime");
    std::vector<std::pair<int, int>> reps;
    std::map<std::pair<int, int>, int> index;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            std::pair<int, int> v{a, b}, w{(q - a) % q, (q - b) % q};
            auto r = std::min(v, w);
            if (!index.count(r)) {
                index.emplace(r, (int)reps.size());
                reps.push_back(r);
            }
        }
    int n = (int)reps.size();
    ColorGraph cg(n, 2 + (q - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [a, b] = reps[i];
            auto [c, d] = reps[j];
            int det = ((a * d - b * c) % q + q) % q;
            if (i == j)
                cg.at(i, j) = 0;
            else if (det == 0)
                cg.at(i, j) = 1;  // proportional: spread clique
            else
                cg.at(i, j) = 2 + std::min(det, q - det) - 1;
        }
    return cg;
}

struct WfdfParams {
    int d = 2;
    // signs[i][j] in {+1,-1} per ordered fiber pair (i != j); empty means
    // the default s_ij = +1 for i < j, -1 for i > j
    std::vector<std::vector<int>> signs;
};

// Prolific rank-5 Jordan scheme on (3^d + 1 choose 2) points: r+1 fibers
// of size 3^d (r = (3^d-1)/2), spread inside fibers, and three relations
// R_0, R_1, R_2 between fibers cut out by the projections pi_k and the
// chosen shift signs.
inline ColorGraph wfdf_scheme(const WfdfParams& params) {
    int d = params.d;
    if (d != 1 && d != 2) throw std::invalid_argument("d must be 1 or 2");
    int fib = d == 1 ? 3 : 9;          // 3^d
    int r = (fib - 1) / 2;             // number of projections
    int nf = r + 1;                    // fibers
    int n = nf * fib;
    auto sign = [&](int i, int j) {
        if (!params.signs.empty()) {
            if ((int)params.signs.size() != nf) throw std::invalid_argument("signs matrix has wrong size");
            int s = params.signs[i][j];
            if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
            return s;
        }
        return i < j ? 1 : -1;
    };
    if (!params.signs.empty())
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j)
                if (i != j && sign(i, j) != -sign(j, i))
                    throw std::invalid_argument("signs must satisfy s_ji = -s_ij");
    // projection pi_k of a point of Z_3^d onto Z_3; k taken mod (r+1), k != 0
    auto proj = [&](int k, int u) {
        int x = u % 3, y = u / 3;
        if (d == 1) return x;
        switch (k) {
            case 1: return x;
            case 2: return y;
            case 3: return (x + y) % 3;
            case 4: return (x - y + 3) % 3;
        }
        throw std::logic_error("bad projection index");
    };
    ColorGraph cg(n, 5);
    for (int i = 0; i < nf; ++i)
        for (int u = 0; u < fib; ++u)
            for (int j = 0; j < nf; ++j)
                for (int v = 0; v < fib; ++v) {
                    int x = i * fib + u, y = j * fib + v;
                    int& c = cg.at(x, y);
                    if (i == j) {
                        c = u == v ? 0 : 1;
                        continue;
                    }
                    int a = proj(((i - j) % nf + nf) % nf, u);
                    int b = proj(((j - i) % nf + nf) % nf, v);
                    int diff = ((a - b) % 3 + 3) % 3;
                    int s = (sign(i, j) % 3 + 3) % 3;  // +1 -> 1, -1 -> 2
                    if (diff == 0)
                        c = 2;
                    else if (diff == s)
                        c = 3;
                    else
                        c = 4;
                }
    return cg;
}

struct PregraphLabeling {
    std::vector<int> island, continent;
    int id_isl = 0, id_con = 1, spr_isl = 2, spr_con = 3;
    std::array<int, 3> t{4, 5, 6};   // continent restrictions T_i
    std::array<int, 3> br{7, 8, 9};  // bridges Br_i
};

struct PregraphResult {
    ColorGraph graph;
    PregraphLabeling labeling;
};

// Split a verified rank-6 scheme along one fiber of its thin radical:
// the island. Identity, spread and each thick color split into island,
// continent and bridge parts, giving a rank-10 color graph.
inline PregraphResult pregraph(const ColorGraph& cg, const Rank6Labeling& lab, int fiber_index) {
    int n = cg.n;
    // fibers of the thin-radical equivalence R_0 u R_1 u R_2, ordered by
    // smallest contained vertex
    std::vector<int> fiber_of(n, -1);
    std::vector<std::vector<int>> fibers;
    std::set<int> thin(lab.thin.begin(), lab.thin.end());
    for (int x = 0; x < n; ++x) {
        if (fiber_of[x] >= 0) continue;
        std::vector<int> f;
        for (int y = 0; y < n; ++y)
            if (thin.count(cg.at(x, y))) {
                fiber_of[y] = (int)fibers.size();
                f.push_back(y);
            }
        fibers.push_back(std::move(f));
    }
    if (fiber_index < 0 || fiber_index >= (int)fibers.size())
        throw std::invalid_argument("fiber index out of range");
    PregraphResult res;
    auto& L = res.labeling;
    for (int x = 0; x < n; ++x)
        (fiber_of[x] == fiber_index ? L.island : L.continent).push_back(x);
    ColorGraph out(n, 10);
    std::vector<int> thick_pos(cg.r, -1);
    for (int i = 0; i < 3; ++i) thick_pos[lab.thick[i]] = i;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            bool xi = fiber_of[x] == fiber_index, yi = fiber_of[y] == fiber_index;
            int c = cg.at(x, y);
            if (x == y)
                out.at(x, y) = xi ? L.id_isl : L.id_con;
            else if (thin.count(c)) {
                if (xi != yi) throw std::logic_error("thin radical crosses the island boundary");
                out.at(x, y) = xi ? L.spr_isl : L.spr_con;
            } else {
                int i = thick_pos[c];
                if (i < 0) throw std::logic_error("color outside the rank-6 labeling");
                if (xi && yi) throw std::logic_error("thick color inside the island");
                out.at(x, y) = (xi || yi) ? L.br[i] : L.t[i];
            }
        }
    res.graph = std::move(out);
    return res;
}

// Bridge switching: keep Delta_keep intact and reattach the other thick
// colors as T_i u Br_{2*keep-i mod 3}; identity and spread parts merge
// back. The result has rank 5.
inline ColorGraph switch_bridges(const PregraphResult& pre, int keep) {
    if (keep < 0 || keep > 2) throw std::invalid_argument("keep index out of range");
    const auto& L = pre.labeling;
    std::vector<int> map(10, -1);
    map[L.id_isl] = 0;
    map[L.id_con] = 0;
    map[L.spr_isl] = 1;
    map[L.spr_con] = 1;
    map[L.t[keep]] = 2;
    map[L.br[keep]] = 2;
    int next = 3;
    for (int i = 0; i < 3; ++i) {
        if (i == keep) continue;
        map[L.t[i]] = next;
        map[L.br[((2 * keep - i) % 3 + 3) % 3]] = next;
        ++next;
    }
    ColorGraph out(pre.graph.n, 5);
    for (size_t i = 0; i < pre.graph.cells.size(); ++i) out.cells[i] = map[pre.graph.cells[i]];
    return out;
}

}  // namespace jlab
