// End-to-end acceptance checks: one pass/fail line per criterion.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <jordanlab/constructions.hpp>
#include <jordanlab/enumerate.hpp>
#include <jordanlab/io.hpp>

using namespace jlab;

namespace {

int failures = 0;
std::string current_detail;

void require(bool ok, const std::string& what) {
    if (!ok && current_detail.empty()) current_detail = what;
}

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    current_detail.clear();
    try {
        body();
    } catch (const std::exception& e) {
        if (current_detail.empty()) current_detail = std::string("exception: ") + e.what();
    }
    if (current_detail.empty()) {
        std::printf("CRITERION %d PASS  %s\n", number, name.c_str());
    } else {
        std::printf("CRITERION %d FAIL  %s  (%s)\n", number, name.c_str(), current_detail.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

std::vector<long long> sorted_valencies(const SchemeReport& rep) {
    auto v = rep.valencies;
    std::sort(v.begin(), v.end());
    return v;
}

ColorGraph relabel(const ColorGraph& cg, const Perm& pv, const Perm& pc) {
    ColorGraph out(cg.n, cg.r);
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y) out.at(pv[x], pv[y]) = pc[cg.at(x, y)];
    return out;
}

ColorGraph regular_s3_orbits() {
    PermGroup s3(3, {perm_parse("(0,1,2)", 3), perm_parse("(0,1)", 3)});
    auto els = s3.elements();
    std::vector<Perm> reg;
    for (auto& g : s3.gens) {
        Perm p(6);
        for (int i = 0; i < 6; ++i) {
            Perm prod = perm_mul(els[i], g);
            p[i] = (int)(std::lower_bound(els.begin(), els.end(), prod) - els.begin());
        }
        reg.push_back(p);
    }
    return two_orbits(PermGroup(6, reg));
}

}  // namespace

int main() {
    criterion(1, "15-point rank-5 scheme golden suite", [] {
        ColorGraph j15 = builtin("j15");
        SchemeReport rep = classify(j15);
        require(rep.is_jordan_scheme, "not a Jordan scheme");
        require(!rep.is_cc, "unexpectedly coherent");
        require(j15.r == 5, "rank != 5");
        require(sorted_valencies(rep) == std::vector<long long>{1, 2, 4, 4, 4}, "valencies");
        PropernessReport pr = is_proper(j15);
        require(pr.proper, "not proper");
        require(pr.wl_fibers == std::vector<int>{3, 12}, "WL fibers");
        PermGroup aut = automorphism_group(j15);
        require(aut.order_str() == "12", "aut order != 12");
        std::vector<size_t> sizes;
        for (auto& o : aut.orbits()) sizes.push_back(o.size());
        std::sort(sizes.begin(), sizes.end());
        require(sizes == std::vector<size_t>{3, 12}, "orbit sizes");
    });

    criterion(2, "switching the 15-point rank-6 scheme", [] {
        OtScheme ot = psl2_ot_scheme(4);
        PregraphResult pre = pregraph(ot.graph, ot.labeling, 0);
        ColorGraph sw0 = switch_bridges(pre, 0);
        require((bool)isomorphic(sw0, builtin("j15"), IsoMode::ColorPermuting),
                "switch(keep=0) not isomorphic to the reference scheme");
        for (int keep : {1, 2})
            require((bool)isomorphic(sw0, switch_bridges(pre, keep), IsoMode::ColorPermuting),
                    "keeps not pairwise isomorphic");
    });

    criterion(3, "24-point suite", [] {
        OtScheme ot = psl2_ot_scheme(7);
        require(ot.labeling.m == 7, "thick valency != 7");
        ColorGraph sym = symmetrize(ot.graph);
        SchemeReport rep = classify(sym);
        require(rep.is_jordan_scheme, "symmetrization not a Jordan scheme");
        require(!is_proper(sym).proper, "symmetrization should not be proper");
        int thick_checked = 0;
        for (int c = 0; c < sym.r; ++c) {
            if (rep.valencies[c] != 7) continue;
            ++thick_checked;
            auto ia = intersection_array(relation(sym, c));
            require((bool)ia, "thick color not distance regular");
            if (ia) {
                require(ia->b == std::vector<long long>{7, 4, 1} &&
                            ia->c == std::vector<long long>{1, 2, 7},
                        "intersection array");
            }
            ColorGraph wl = wl_closure(from_graph(relation(sym, c))).closure;
            require(wl.r == 4, "thick color closure rank != 4");
            require(automorphism_group(wl).order_str() == "336", "closure aut != 336");
            require(!is_schurian(wl), "closure unexpectedly schurian");
        }
        require(thick_checked == 3, "expected three thick colors");
        ColorGraph sw = switch_bridges(pregraph(ot.graph, ot.labeling, 0), 0);
        require(is_proper(sw).proper, "switched scheme not proper");
        require(automorphism_group(sw).order_str() == "42", "switched aut != 42");
    });

    criterion(4, "determinant graph cross-check", [] {
        ColorGraph a = from_graph(gunnells_graph(7, 1));
        for (int alpha : {2, 3})
            require((bool)isomorphic(a, from_graph(gunnells_graph(7, alpha)), IsoMode::ColorPermuting),
                    "determinant classes not pairwise isomorphic");
        require((bool)isomorphic(gunnells_scheme(7), symmetrize(psl2_ot_scheme(7).graph),
                                 IsoMode::ColorPermuting),
                "scheme differs from the symmetrized rank-6 scheme");
        RelationMatrix g3 = gunnells_graph(3, 1);
        bool k4 = g3.n == 4;
        for (int x = 0; x < g3.n && k4; ++x)
            for (int y = 0; y < g3.n; ++y)
                if ((bool)g3.get(x, y) != (x != y)) k4 = false;
        require(k4, "q=3 is not K_4");
        RelationMatrix g5 = gunnells_graph(5, 1);
        require(g5.n == 12, "q=5 vertex count");
        for (int x = 0; x < g5.n; ++x) {
            int deg = 0;
            for (int y = 0; y < g5.n; ++y) deg += g5.get(x, y);
            require(deg == 5, "q=5 valency");
        }
    });

    criterion(5, "order-6 and order-45 schemes", [] {
        ColorGraph w1 = wfdf_scheme({.d = 1});
        require((bool)isomorphic(w1, symmetrize(regular_s3_orbits()), IsoMode::ColorPermuting),
                "d=1 differs from the symmetrized regular action");
        require(!is_proper(w1).proper, "d=1 should not be proper");

        ColorGraph w2 = wfdf_scheme({.d = 2});
        SchemeReport rep = classify(w2);
        require(rep.is_jordan_scheme && w2.r == 5, "d=2 not a rank-5 Jordan scheme");
        require(is_proper(w2).proper, "d=2 not proper");
        std::vector<std::vector<int>> fibers;
        for (int f = 0; f < 5; ++f) {
            std::vector<int> blk;
            for (int u = 0; u < 9; ++u) blk.push_back(9 * f + u);
            fibers.push_back(blk);
        }
        int srg_colors = 0;
        for (int c = 0; c < w2.r; ++c) {
            if (rep.valencies[c] != 12) continue;
            ++srg_colors;
            RelationMatrix g = relation(w2, c);
            // SRG(45,12,3,3): count common neighbours directly
            for (int x = 0; x < 45; ++x)
                for (int y = 0; y < 45; ++y) {
                    if (x == y) continue;
                    int common = 0;
                    for (int z = 0; z < 45; ++z)
                        if (g.get(x, z) && g.get(z, y)) ++common;
                    require(common == 3, "SRG parameter");
                }
            SpreadReport sp = check_spread(g, fibers);
            require(sp.is_spread && sp.hoffman && sp.alpha, "spread checks");
        }
        require(srg_colors == 3, "expected three valency-12 colors");
    });

    criterion(6, "small-order enumeration counts", [] {
        auto count = [](int n, int rank, std::vector<long long> val) {
            EnumerationTask t;
            t.n = n;
            t.min_rank = rank;
            t.max_rank = rank;
            if (!val.empty()) t.valencies = std::move(val);
            EnumerationResult r = enumerate_jordan_schemes(t);
            require(r.complete, "search incomplete");
            for (auto& s : r.schemes)
                require(!s.properness.proper, "emitted scheme unexpectedly proper");
            return (int)r.schemes.size();
        };
        require(count(6, 5, {}) == 1, "n=6 rank 5");
        require(count(8, 5, {1, 1, 2, 2, 2}) == 2, "n=8 {1,1,2,2,2}");
        require(count(8, 5, {1, 1, 1, 1, 4}) == 1, "n=8 {1,1,1,1,4}");
        require(count(8, 5, {1, 1, 1, 2, 3}) == 0, "n=8 {1,1,1,2,3}");
        require(count(9, 5, {}) == 2, "n=9 rank 5");
        require(count(10, 6, {1, 1, 2, 2, 2, 2}) == 1, "n=10 rank 6 {1,1,2,2,2,2}");
        require(count(10, 5, {1, 1, 2, 2, 4}) == 1, "n=10 {1,1,2,2,4}");
        require(count(10, 5, {1, 2, 2, 2, 3}) == 0, "n=10 {1,2,2,2,3}");
        require(count(10, 5, {1, 1, 2, 3, 3}) == 0, "n=10 {1,1,2,3,3}");
        EnumerationTask t11;
        t11.n = 11;
        t11.proper_only = true;
        EnumerationResult r11 = enumerate_jordan_schemes(t11);
        require(r11.complete, "n=11 search incomplete");
        require(r11.schemes.empty(), "n=11 proper count");
    });

    criterion(7, "rank-5 mergings of the symmetrized 15-point orbit scheme", [] {
        PermGroup a4(15, {perm_parse("(0,1,3)(2,5,9)(4,6,10)(7,8,11)(12,13,14)", 15),
                          perm_parse("(0,2,6)(1,4,8)(3,7,5)(9,11,10)(12,14,13)", 15)});
        ColorGraph sym = symmetrize(two_orbits(a4));
        require(sym.r == 13, "symmetrized rank != 13");
        MergingConstraints con;
        con.target = MergingConstraints::Target::JordanScheme;
        con.exact_rank = 5;
        auto mergings = find_mergings(sym, con);
        require(mergings.size() == 24, "merging count != 24");
        int proper = 0;
        std::set<std::vector<int>> classes;
        for (auto& p : mergings) {
            ColorGraph merged = merge_colors(sym, p);
            if (is_proper(merged).proper) ++proper;
            classes.insert(canonical_form(merged).cells);
        }
        require(proper == 12, "proper merging count != 12");
        require(classes.size() == 2, "isomorphism class count != 2");
    });

    criterion(8, "pair-orbit worked example", [] {
        PermGroup d5(5, {perm_parse("(0,1,2,3,4)", 5), perm_parse("(1,4)(2,3)", 5)});
        auto act = induce(d5, {{{0}, {1}}, {{0}, {2}}});
        require(act.image.n == 10, "induced degree != 10");
        ColorGraph cg = two_orbits(act.image);
        require(cg.r == 12, "pair-orbit rank != 12");
        auto mergings = find_mergings(cg, MergingConstraints{});
        require(mergings.size() == 10, "merging count != 10");
        require(algebraic_automorphisms(cg).size() == 4, "AAut order != 4");
        require(color_automorphism_group(cg).order_str() == "40", "CAut order != 40");
        std::multiset<std::string> orders;
        for (auto& p : mergings)
            orders.insert(automorphism_group(merge_colors(cg, p)).order_str());
        for (const char* o : {"20", "240", "120", "28800"})
            require(orders.count(o) >= 1, std::string("missing merging aut order ") + o);
    });

    criterion(9, "property suites", [] {
        std::mt19937 rng(1234);
        auto random_symmetric = [&](int n) {
            RelationMatrix m(n);
            for (int x = 0; x < n; ++x)
                for (int y = x; y < n; ++y) {
                    bool v = rng() & 1;
                    m.set(x, y, v);
                    m.set(y, x, v);
                }
            return m;
        };
        auto to_int = [](const RelationMatrix& m) {
            IntMatrix out(m.n);
            for (size_t i = 0; i < m.entries.size(); ++i) out.entries[i] = m.entries[i];
            return out;
        };
        auto jprod = [](const IntMatrix& a, const IntMatrix& b) {
            IntMatrix s = int_mul(a, b), t = int_mul(b, a);
            for (size_t i = 0; i < s.entries.size(); ++i) s.entries[i] += t.entries[i];
            return s;
        };
        // doubled Jordan identity on random symmetric 0/1 matrices
        for (int t = 0; t < 1000; ++t) {
            int n = 2 + (int)(rng() % 7);
            IntMatrix a = to_int(random_symmetric(n)), b = to_int(random_symmetric(n));
            IntMatrix asq = jprod(a, a);
            require(jprod(jprod(a, b), asq).entries == jprod(a, jprod(b, asq)).entries,
                    "Jordan identity");
        }
        // closure idempotence on random partitions, and derived properties
        // of every coherent configuration produced
        for (int t = 0; t < 200; ++t) {
            int n = 2 + (int)(rng() % 6);
            int colors = 1 + (int)(rng() % 4);
            ColorGraph input(n, colors);
            for (auto& v : input.cells) v = (int)(rng() % colors);
            std::vector<int> map(colors, -1);
            int next = 0;
            for (int v : input.cells)
                if (map[v] < 0) map[v] = next++;
            for (auto& v : input.cells) v = map[v];
            input.r = next;
            ColorGraph wl = wl_closure(input).closure;
            require(same_partition(wl_closure(wl).closure, wl), "WL idempotence");
            ColorGraph jc = jordan_closure(input).closure;
            require(same_partition(jordan_closure(jc).closure, jc), "Jordan idempotence");
            SchemeReport rep = classify(wl);
            require(rep.is_cc, "WL closure not coherent");
            // intersection numbers against direct path counting
            StructureResult sc = structure_constants(wl);
            require(sc.ok, "structure constants");
            for (int s = 0; s < 20; ++s) {
                int i = (int)(rng() % wl.r), j = (int)(rng() % wl.r);
                int x = (int)(rng() % n), y = (int)(rng() % n);
                long long paths = 0;
                for (int z = 0; z < n; ++z)
                    if (wl.at(x, z) == i && wl.at(z, y) == j) ++paths;
                require(sc.tensor.get(i, j, wl.at(x, y)) == paths, "path count");
            }
            // the symmetrization of a coherent configuration is closed
            // under the Jordan product; when homogeneous it is a scheme
            ColorGraph sym = symmetrize(wl);
            require(same_partition(jordan_closure(sym).closure, sym),
                    "symmetrized CC not Jordan closed");
            if (rep.is_homogeneous)
                require(classify(sym).is_jordan_scheme, "symmetrized scheme not Jordan");
            // walk regularity of basic graphs holds in the homogeneous case
            if (rep.is_homogeneous)
                for (int c = 0; c < wl.r; ++c) {
                    RelationMatrix g = relation(wl, c);
                    if (g.irreflexive() && g.symmetric())
                        require(is_walk_regular(g), "basic graph not walk regular");
                }
        }
        // walk regularity across a spread of homogeneous schemes
        for (auto scheme : {builtin("petersen"), psl2_ot_scheme(4).graph, gunnells_scheme(7),
                            wfdf_scheme({.d = 2}),
                            two_orbits(PermGroup(7, {perm_parse("(0,1,2,3,4,5,6)", 7)}))}) {
            require(classify(scheme).is_homogeneous, "scheme source not homogeneous");
            for (int c = 0; c < scheme.r; ++c) {
                RelationMatrix g = relation(scheme, c);
                if (g.irreflexive() && g.symmetric())
                    require(is_walk_regular(g), "basic graph not walk regular");
            }
        }
        // every rank-4 Jordan scheme of order <= 8 is coherent
        for (int n = 4; n <= 8; ++n) {
            EnumerationTask task;
            task.n = n;
            task.min_rank = 4;
            task.max_rank = 4;
            for (auto& s : enumerate_jordan_schemes(task).schemes)
                require(s.report.is_cc, "rank-4 Jordan scheme not coherent");
        }
    });

    criterion(10, "walk-regular pair outside the scheme", [] {
        ColorGraph s12 = builtin("s12");
        require(is_walk_regular(relation(s12, 3)), "color 3 not walk regular");
        require(is_walk_regular(relation(s12, 4)), "color 4 not walk regular");
        ColorGraph wl = wl_closure(from_graph(relation(s12, 3))).closure;
        require(classify(wl).fibers.size() >= 2, "closure has a single fiber");
        require(automorphism_group(from_graph(relation(s12, 3))).order_str() == "32",
                "color-3 aut order != 32");
    });

    if (failures == 0)
        std::printf("ALL CRITERIA PASSED\n");
    else
        std::printf("%d CRITERIA FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
