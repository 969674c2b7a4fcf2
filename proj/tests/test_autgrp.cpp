#include <doctest.h>

#include <jordanlab/autgrp.hpp>
#include <jordanlab/constructions.hpp>

#include <random>

using namespace jlab;

namespace {

ColorGraph relabel(const ColorGraph& cg, const Perm& pv, const Perm& pc) {
    ColorGraph out(cg.n, cg.r);
    for (int x = 0; x < cg.n; ++x)
        for (int y = 0; y < cg.n; ++y) out.at(pv[x], pv[y]) = pc[cg.at(x, y)];
    return out;
}

RelationMatrix pentagonal_prism() {
    RelationMatrix g(10);
    for (int i = 0; i < 5; ++i) {
        int j = (i + 1) % 5;
        g.set(i, j, true);
        g.set(j, i, true);
        g.set(5 + i, 5 + j, true);
        g.set(5 + j, 5 + i, true);
        g.set(i, 5 + i, true);
        g.set(5 + i, i, true);
    }
    return g;
}

}  // namespace

TEST_CASE("2-orbit color graphs of small groups") {
    PermGroup c5(5, {perm_parse("(0,1,2,3,4)", 5)});
    CHECK(two_orbits(c5).r == 5);
    PermGroup d5(5, {perm_parse("(0,1,2,3,4)", 5), perm_parse("(1,4)(2,3)", 5)});
    CHECK(two_orbits(d5).r == 3);
    PermGroup s4(4, {perm_parse("(0,1,2,3)", 4), perm_parse("(0,1)", 4)});
    CHECK(two_orbits(s4).r == 2);
    // every 2-orbit graph is coherent and fixed by its own group
    for (auto* g : {&c5, &d5, &s4}) {
        ColorGraph cg = two_orbits(*g);
        CHECK(classify(cg).is_cc);
        for (auto& gen : g->gens)
            for (int x = 0; x < cg.n; ++x)
                for (int y = 0; y < cg.n; ++y) CHECK(cg.at(gen[x], gen[y]) == cg.at(x, y));
    }
}

TEST_CASE("automorphism groups of reference graphs") {
    CHECK(automorphism_group(builtin("petersen")).order_str() == "120");
    CHECK(automorphism_group(builtin("heawood")).order_str() == "336");
    RelationMatrix c5(5);
    for (int i = 0; i < 5; ++i) {
        c5.set(i, (i + 1) % 5, true);
        c5.set((i + 1) % 5, i, true);
    }
    CHECK(automorphism_group(from_graph(c5)).order_str() == "10");

    PermGroup aut = automorphism_group(builtin("j15"));
    CHECK(aut.order_str() == "12");
    std::vector<size_t> sizes;
    for (auto& o : aut.orbits()) sizes.push_back(o.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{3, 12});
}

TEST_CASE("automorphisms preserve all colors") {
    for (auto name : {"j15", "petersen", "s12"}) {
        ColorGraph cg = builtin(name);
        PermGroup aut = automorphism_group(cg);
        for (auto& g : aut.gens)
            for (int x = 0; x < cg.n; ++x)
                for (int y = 0; y < cg.n; ++y) CHECK(cg.at(g[x], g[y]) == cg.at(x, y));
    }
}

TEST_CASE("automorphism order is relabeling invariant") {
    std::mt19937 rng(5);
    for (auto name : {"j15", "shah6"}) {
        ColorGraph cg = builtin(name);
        std::string order = automorphism_group(cg).order_str();
        for (int t = 0; t < 3; ++t) {
            Perm pv(cg.n), pc(cg.r);
            for (int i = 0; i < cg.n; ++i) pv[i] = i;
            for (int i = 0; i < cg.r; ++i) pc[i] = i;
            std::shuffle(pv.begin(), pv.end(), rng);
            std::shuffle(pc.begin(), pc.end(), rng);
            CHECK(automorphism_group(relabel(cg, pv, pc)).order_str() == order);
        }
    }
}

TEST_CASE("isomorphism search") {
    ColorGraph pet = from_graph(petersen_graph());
    std::mt19937 rng(9);
    Perm pv(10), id3 = perm_identity(3);
    for (int i = 0; i < 10; ++i) pv[i] = i;
    std::shuffle(pv.begin(), pv.end(), rng);
    ColorGraph moved = relabel(pet, pv, id3);

    auto w = isomorphic(pet, moved, IsoMode::ColorPreserving);
    REQUIRE(w);
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y)
            CHECK(moved.at(w->vertex_map[x], w->vertex_map[y]) == pet.at(x, y));

    // swapping edge and non-edge colors needs the color-permuting mode
    ColorGraph swapped = relabel(pet, perm_identity(10), Perm{0, 2, 1});
    CHECK_FALSE(isomorphic(pet, swapped, IsoMode::ColorPreserving));
    auto wp = isomorphic(pet, swapped, IsoMode::ColorPermuting);
    REQUIRE(wp);
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y)
            CHECK(swapped.at(wp->vertex_map[x], wp->vertex_map[y]) == wp->color_map[pet.at(x, y)]);

    // Petersen and the pentagonal prism are both cubic on 10 vertices but
    // not isomorphic
    ColorGraph prism = from_graph(pentagonal_prism());
    CHECK_FALSE(isomorphic(pet, prism, IsoMode::ColorPermuting));
}

TEST_CASE("canonical form characterizes the isomorphism class") {
    std::mt19937 rng(17);
    for (auto base : {builtin("j15"), from_graph(petersen_graph()), gunnells_scheme(5)}) {
        ColorGraph canon = canonical_form(base);
        CHECK(canon.n == base.n);
        CHECK(canon.r == base.r);
        for (int t = 0; t < 4; ++t) {
            Perm pv(base.n), pc(base.r);
            for (int i = 0; i < base.n; ++i) pv[i] = i;
            for (int i = 0; i < base.r; ++i) pc[i] = i;
            std::shuffle(pv.begin(), pv.end(), rng);
            std::shuffle(pc.begin(), pc.end(), rng);
            CHECK(canonical_form(relabel(base, pv, pc)).cells == canon.cells);
        }
        // the canonical form is itself isomorphic to the input
        CHECK(isomorphic(base, canon, IsoMode::ColorPermuting));
    }
    CHECK(canonical_form(from_graph(petersen_graph())).cells !=
          canonical_form(from_graph(pentagonal_prism())).cells);
}

TEST_CASE("algebraic and color automorphisms of the pair-orbit example") {
    PermGroup d5(5, {perm_parse("(0,1,2,3,4)", 5), perm_parse("(1,4)(2,3)", 5)});
    auto act = induce(d5, {{{0}, {1}}, {{0}, {2}}});
    ColorGraph cg = two_orbits(act.image);
    CHECK(cg.r == 12);
    PermGroup aut = automorphism_group(cg);
    CHECK(aut.order_str() == "10");
    CHECK(algebraic_automorphisms(cg).size() == 4);
    PermGroup caut = color_automorphism_group(cg);
    CHECK(caut.order_str() == "40");
    // CAut contains Aut, and the quotient embeds into AAut
    for (auto& g : aut.gens) CHECK(caut.contains(g));
    CHECK((long long)(caut.order() / aut.order()) * (long long)aut.order() ==
          (long long)caut.order());
    CHECK(4 % (int)(caut.order() / aut.order()) == 0);
}

TEST_CASE("tensor automorphisms fix valency and reflexivity classes") {
    ColorGraph j15 = builtin("j15");
    SchemeReport rep = classify(j15);
    for (auto& sigma : algebraic_automorphisms(j15)) {
        for (int c = 0; c < j15.r; ++c) {
            CHECK(rep.valencies[sigma[c]] == rep.valencies[c]);
            CHECK(rep.reflexive[sigma[c]] == rep.reflexive[c]);
        }
    }
    CHECK_THROWS_AS(scheme_tensor(builtin("heawood")), std::domain_error);
}

TEST_CASE("schurian recognition") {
    PermGroup d5(5, {perm_parse("(0,1,2,3,4)", 5), perm_parse("(1,4)(2,3)", 5)});
    CHECK(is_schurian(two_orbits(d5)));
    CHECK(is_schurian(builtin("petersen")));
}
