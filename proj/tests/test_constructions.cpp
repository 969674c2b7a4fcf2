#include <doctest.h>

#include <jordanlab/autgrp.hpp>
#include <jordanlab/constructions.hpp>
#include <jordanlab/stabilize.hpp>

using namespace jlab;

TEST_CASE("finite field arithmetic") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27}) {
        FiniteField F(q);
        CHECK(F.q == q);
        CHECK((int)F.poly.size() == F.k + 1);
        CHECK(F.poly.back() == 1);
        // sampled field axioms
        for (int a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1 % q) == (q == 1 ? 0 : a));
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                int c = (a + b) % q;  // just a third sample point
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            }
        }
        // generator has full multiplicative order
        int g = F.generator();
        int e = 1;
        for (int i = 1; i < q - 1; ++i) {
            e = F.mul(e, g);
            CHECK(e != 1);
        }
        CHECK(F.mul(e, g) == 1);
        for (int a = 1; a < q; ++a) CHECK(F.pow(g, F.dlog(a)) == a);
    }
    CHECK_THROWS_AS(FiniteField(6), std::invalid_argument);
    CHECK_THROWS_AS(FiniteField(12), std::invalid_argument);
    CHECK_THROWS_AS(FiniteField(1), std::invalid_argument);
    CHECK_THROWS_AS(FiniteField(4).dlog(0), std::domain_error);
    CHECK_THROWS_AS(FiniteField(4).inv(0), std::domain_error);
}

TEST_CASE("prime field matches modular arithmetic") {
    FiniteField F(11);
    for (int a = 0; a < 11; ++a)
        for (int b = 0; b < 11; ++b) {
            CHECK(F.add(a, b) == (a + b) % 11);
            CHECK(F.mul(a, b) == (a * b) % 11);
        }
}

TEST_CASE("builtin graphs") {
    ColorGraph j15 = builtin("j15");
    CHECK(j15.n == 15);
    CHECK(j15.r == 5);
    ColorGraph s12 = builtin("s12");
    CHECK(s12.n == 12);
    CHECK(s12.r == 5);
    ColorGraph shah6 = builtin("shah6");
    CHECK(shah6.n == 6);
    CHECK(shah6.r == 5);
    CHECK(builtin("petersen").n == 10);
    CHECK(builtin("heawood").n == 14);
    CHECK_THROWS_AS(builtin("nope"), std::invalid_argument);
}

TEST_CASE("line graph of the Petersen graph") {
    LineGraphResult lg = line_graph(petersen_graph());
    CHECK(lg.graph.n == 15);
    CHECK(lg.edges.size() == 15);
    for (int x = 0; x < 15; ++x) {
        int deg = 0;
        for (int y = 0; y < 15; ++y) deg += lg.graph.get(x, y);
        CHECK(deg == 4);
    }
    RelationMatrix empty(3);
    CHECK_THROWS_AS(line_graph(empty), std::invalid_argument);
}

TEST_CASE("rank-6 table verification") {
    OtScheme ot4 = psl2_ot_scheme(4);
    CHECK(ot4.graph.n == 15);
    CHECK(ot4.labeling.m == 4);
    Rank6Result v = verify_rank6_table(ot4.graph);
    CHECK(v.ok);
    CHECK(v.labeling.m == 4);

    OtScheme ot7 = psl2_ot_scheme(7);
    CHECK(ot7.graph.n == 24);
    CHECK(ot7.labeling.m == 7);

    CHECK_FALSE(verify_rank6_table(builtin("j15")).ok);  // rank 5
    CHECK_THROWS_AS(psl2_ot_scheme(5), std::invalid_argument);  // 5 != 1 mod 3
    CHECK_THROWS_AS(psl2_ot_scheme(2), std::invalid_argument);
}

TEST_CASE("ot-point scheme structure") {
    OtScheme ot = psl2_ot_scheme(4);
    SchemeReport rep = classify(ot.graph);
    CHECK(rep.is_cc);
    CHECK(rep.is_homogeneous);
    std::vector<long long> val = rep.valencies;
    std::sort(val.begin(), val.end());
    CHECK(val == std::vector<long long>{1, 1, 1, 4, 4, 4});
}

TEST_CASE("gunnells graphs") {
    RelationMatrix g3 = gunnells_graph(3, 1);
    CHECK(g3.n == 4);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK((bool)g3.get(x, y) == (x != y));  // K_4

    RelationMatrix g5 = gunnells_graph(5, 1);
    CHECK(g5.n == 12);
    for (int x = 0; x < 12; ++x) {
        int deg = 0;
        for (int y = 0; y < 12; ++y) deg += g5.get(x, y);
        CHECK(deg == 5);
    }

    // the determinant classes give isomorphic graphs
    ColorGraph a = from_graph(gunnells_graph(7, 1));
    for (int alpha : {2, 3}) {
        ColorGraph b = from_graph(gunnells_graph(7, alpha));
        CHECK(isomorphic(a, b, IsoMode::ColorPermuting));
    }
    CHECK_THROWS_AS(gunnells_graph(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(gunnells_graph(7, 0), std::invalid_argument);
    CHECK_THROWS_AS(gunnells_graph(7, 7), std::invalid_argument);
}

TEST_CASE("gunnells scheme matches the symmetrized ot-point scheme") {
    ColorGraph gs = gunnells_scheme(7);
    CHECK(gs.n == 24);
    CHECK(gs.r == 5);
    ColorGraph sym = symmetrize(psl2_ot_scheme(7).graph);
    CHECK(isomorphic(gs, sym, IsoMode::ColorPermuting));
}

TEST_CASE("wfdf schemes") {
    ColorGraph w1 = wfdf_scheme({.d = 1});
    CHECK(w1.n == 6);
    CHECK(w1.r == 5);
    CHECK(isomorphic(w1, builtin("shah6"), IsoMode::ColorPermuting));
    CHECK_FALSE(is_proper(w1).proper);

    ColorGraph w2 = wfdf_scheme({.d = 2});
    CHECK(w2.n == 45);
    SchemeReport rep = classify(w2);
    CHECK(rep.is_jordan_scheme);
    CHECK(rep.is_homogeneous);
    std::vector<long long> val = rep.valencies;
    std::sort(val.begin(), val.end());
    CHECK(val == std::vector<long long>{1, 8, 12, 12, 12});

    CHECK_THROWS_AS(wfdf_scheme({.d = 3}), std::invalid_argument);
    WfdfParams bad{.d = 1, .signs = {{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(wfdf_scheme(bad), std::invalid_argument);
}

TEST_CASE("custom wfdf signs flip relations consistently") {
    // d=1 has two fibers; the reversed sign matrix swaps the two shift
    // colors, giving an isomorphic scheme
    WfdfParams flipped{.d = 1, .signs = {{1, -1}, {1, 1}}};
    ColorGraph w = wfdf_scheme(flipped);
    CHECK(isomorphic(w, wfdf_scheme({.d = 1}), IsoMode::ColorPermuting));
    WfdfParams bad_shape{.d = 1, .signs = {{1, -1, 1}, {1, 1, 1}, {1, 1, 1}}};
    CHECK_THROWS_AS(wfdf_scheme(bad_shape), std::invalid_argument);
}

TEST_CASE("pregraph splits a rank-6 scheme into ten colors") {
    OtScheme ot = psl2_ot_scheme(4);
    PregraphResult pre = pregraph(ot.graph, ot.labeling, 0);
    CHECK(pre.graph.n == 15);
    CHECK(pre.graph.r == 10);
    CHECK(pre.labeling.island.size() == 3);
    CHECK(pre.labeling.continent.size() == 12);
    // islands for different fibers are isomorphic splits
    PregraphResult pre1 = pregraph(ot.graph, ot.labeling, 1);
    CHECK(isomorphic(pre.graph, pre1.graph, IsoMode::ColorPermuting));
    CHECK_THROWS_AS(pregraph(ot.graph, ot.labeling, 99), std::invalid_argument);
}

TEST_CASE("bridge switching produces the rank-5 reference scheme") {
    OtScheme ot = psl2_ot_scheme(4);
    PregraphResult pre = pregraph(ot.graph, ot.labeling, 0);
    ColorGraph sw = switch_bridges(pre, 0);
    CHECK(sw.r == 5);
    CHECK(classify(sw).is_jordan_scheme);
    CHECK(isomorphic(sw, builtin("j15"), IsoMode::ColorPermuting));
    // all three keeps give isomorphic schemes
    for (int keep : {1, 2})
        CHECK(isomorphic(sw, switch_bridges(pre, keep), IsoMode::ColorPermuting));
    CHECK_THROWS_AS(switch_bridges(pre, 3), std::invalid_argument);
}
