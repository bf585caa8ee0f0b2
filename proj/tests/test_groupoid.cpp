#include <catch2/catch_amalgamated.hpp>

#include "eqalg/groupoid.hpp"

using namespace eqalg;

namespace {

// the terminal groupoid with its unique map from BG
GroupoidMap bg_to_point(const GroupPtr& G, const GroupoidPtr& bg,
                        const GroupoidPtr& pt) {
    return make_functor(bg, pt, std::vector<int>(1, 0),
                        std::vector<int>(G->n, 0));
}

}  // namespace

TEST_CASE("builders validate") {
    REQUIRE(discrete_groupoid(3)->nmor() == 3);
    REQUIRE(contractible_groupoid(3)->nmor() == 9);
    auto bg = one_object_groupoid(symmetric_group(3));
    REQUIRE(bg->nobj == 1);
    REQUIRE(bg->nmor() == 6);
}

TEST_CASE("action groupoid of a G-set is faithful over BG") {
    auto S3 = symmetric_group(3);
    auto X = orbit_gset(S3, 1);
    auto ag = action_groupoid(X);
    REQUIRE(ag.gpd->nobj == 3);
    REQUIRE(ag.gpd->nmor() == 18);
    REQUIRE(is_faithful(ag.to_bg));
    auto comps = components(*ag.gpd);
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0].skeleton->n == 2);  // stabilizer C2
}

TEST_CASE("point times point over BG is discrete with |G| objects") {
    for (auto G : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
        auto bg = one_object_groupoid(G);
        auto pt = point_groupoid();
        auto f = make_functor(pt, bg, {0}, {G->e});
        auto sq = iso_comma_pullback(f, f);
        REQUIRE(sq.apex->nobj == G->n);
        REQUIRE(sq.apex->nmor() == G->n);  // identities only
        for (int m = 0; m < sq.apex->nmor(); ++m)
            REQUIRE(sq.apex->src[m] == sq.apex->tgt[m]);
    }
}

TEST_CASE("iso-comma square satisfies the universal property") {
    auto C2 = cyclic_group(2);
    auto bg = one_object_groupoid(C2);
    auto pt = point_groupoid();
    auto f = make_functor(pt, bg, {0}, {C2->e});
    auto sq = iso_comma_pullback(f, f);
    auto r = verify_pullback_up(sq, standard_test_groupoids());
    INFO(r.detail);
    REQUIRE(r.ok);

    // a second square with a non-discrete apex: BC2 x_BC2 BC2 along identities
    auto idf = identity_functor(bg);
    auto sq2 = iso_comma_pullback(idf, idf);
    auto r2 = verify_pullback_up(sq2, standard_test_groupoids());
    INFO(r2.detail);
    REQUIRE(r2.ok);
}

TEST_CASE("faithful functors are stable under iso-comma pullback") {
    auto S3 = symmetric_group(3);
    auto bg = one_object_groupoid(S3);
    const auto& cls = S3->subgroup_classes();
    // faithful: action groupoid projection of S3/C2
    auto ag = action_groupoid(orbit_gset(S3, 1));
    auto f = make_functor(ag.gpd, bg, ag.to_bg.omap, ag.to_bg.mmap);
    // arbitrary: BC3 -> BS3
    const auto& emb = S3->subgroup_group(cls[2]);
    std::vector<int> mm(emb.group->n);
    for (int i = 0; i < emb.group->n; ++i) mm[i] = emb.embed[i];
    auto g = make_functor(one_object_groupoid(emb.group), bg, {0}, mm);
    auto sq = iso_comma_pullback(f, g);
    REQUIRE(is_faithful(sq.pB));
    auto r = verify_pullback_up(sq, standard_test_groupoids());
    INFO(r.detail);
    REQUIRE(r.ok);
}

TEST_CASE("pasting of iso-comma squares") {
    // pullback of a composite along a map equals iterated pullbacks, up to
    // equivalence of apexes
    auto C2 = cyclic_group(2);
    auto bg = one_object_groupoid(C2);
    auto pt = point_groupoid();
    auto f = make_functor(pt, bg, {0}, {C2->e});
    auto sq1 = iso_comma_pullback(f, f);
    auto h = compose_functors(f, sq1.pB);  // apex -> BC2
    auto sq_direct = iso_comma_pullback(f, h);
    auto sq_step = iso_comma_pullback(sq1.pB, sq1.pB);  // over the pt corner
    REQUIRE(sq_direct.apex->nobj == 4);
    REQUIRE(equivalent_groupoids(*sq_direct.apex, *sq_step.apex));
}

TEST_CASE("functor predicates") {
    auto C2 = cyclic_group(2);
    auto bg = one_object_groupoid(C2);
    auto pt = point_groupoid();
    auto inc = make_functor(pt, bg, {0}, {C2->e});
    REQUIRE(is_faithful(inc));
    REQUIRE_FALSE(is_full(inc));
    auto collapse = make_functor(bg, pt, {0}, {0, 0});
    REQUIRE(is_full(collapse));
    REQUIRE_FALSE(is_faithful(collapse));
    REQUIRE(is_component_full(collapse));
    auto walking = contractible_groupoid(2);
    auto sk = make_functor(pt, walking, {0}, {walking->idm[0]});
    REQUIRE(is_equivalence(sk));
    REQUIRE_FALSE(is_equivalence(inc));
}

TEST_CASE("fold maps are excluded from the left class") {
    auto pt = point_groupoid();
    auto two = discrete_groupoid(2);
    auto fold = make_functor(two, pt, {0, 0}, {0, 0});
    // full on each component, but misses cross-component hom sets and is not
    // bijective on components
    REQUIRE(is_componentwise_full(fold));
    REQUIRE_FALSE(is_full(fold));
    REQUIRE_FALSE(is_component_full(fold));
    auto C2 = cyclic_group(2);
    auto bc2 = one_object_groupoid(C2);
    auto two_bc2 = disjoint_union_groupoid(*bc2, *bc2);
    auto fold2 = make_functor(two_bc2, bc2, {0, 0}, {0, 1, 0, 1});
    REQUIRE(is_componentwise_full(fold2));
    REQUIRE_FALSE(is_component_full(fold2));
}

TEST_CASE("component-full followed by faithful factorization") {
    auto C4 = cyclic_group(4);
    auto C2 = cyclic_group(2);
    auto bc4 = one_object_groupoid(C4);
    auto bc2 = one_object_groupoid(C2);
    // BC4 -> BC2 along the surjection
    auto F = make_functor(bc4, bc2, {0}, {0, 1, 0, 1});
    auto fac = em_factorize(F);
    REQUIRE(is_component_full(fac.e));
    REQUIRE(is_faithful(fac.m));
    REQUIRE(compose_functors(fac.m, fac.e) == F);

    // non-surjective case: BC2 -> BC4 trivial map
    auto G = make_functor(bc2, bc4, {0}, {0, 0});
    auto fac2 = em_factorize(G);
    REQUIRE(is_component_full(fac2.e));
    REQUIRE(is_faithful(fac2.m));
    REQUIRE(compose_functors(fac2.m, fac2.e) == G);
    REQUIRE(fac2.image->nmor() == 1);

    // multi-component source
    auto two = disjoint_union_groupoid(*bc4, *one_object_groupoid(trivial_group()));
    std::vector<int> om{0, 0}, mm{0, 1, 0, 1, 0};
    auto H = make_functor(two, bc2, std::move(om), std::move(mm));
    auto fac3 = em_factorize(H);
    REQUIRE(is_component_full(fac3.e));
    REQUIRE(is_faithful(fac3.m));
    REQUIRE(compose_functors(fac3.m, fac3.e) == H);
}

TEST_CASE("functor enumeration counts") {
    auto C2 = cyclic_group(2);
    auto bg = one_object_groupoid(C2);
    auto pt = point_groupoid();
    REQUIRE(all_functors(pt, bg).size() == 1);
    REQUIRE(all_functors(bg, bg).size() == 2);  // trivial and identity
    REQUIRE(all_functors(discrete_groupoid(2), bg).size() == 1);
    REQUIRE(all_functors(bg, contractible_groupoid(2)).size() == 2);
    auto bs3 = one_object_groupoid(symmetric_group(3));
    REQUIRE(all_functors(bs3, bg).size() == 2);  // trivial and sign
}

TEST_CASE("natural transformation enumeration") {
    auto C2 = cyclic_group(2);
    auto bg = one_object_groupoid(C2);
    auto fs = all_functors(bg, bg);
    // nat transfs id => id are the center = C2
    for (const auto& F : fs)
        REQUIRE(all_nat_transfs(F, F).size() == 2);
    REQUIRE(naturally_isomorphic(fs[0], fs[0]));
    auto pt = point_groupoid();
    auto walking = contractible_groupoid(2);
    auto a = make_functor(pt, walking, {0}, {walking->idm[0]});
    auto b = make_functor(pt, walking, {1}, {walking->idm[1]});
    REQUIRE(naturally_isomorphic(a, b));
}

TEST_CASE("equivalence classification of groupoids") {
    auto C2 = cyclic_group(2);
    REQUIRE(equivalent_groupoids(*contractible_groupoid(3), *point_groupoid()));
    REQUIRE_FALSE(
        equivalent_groupoids(*one_object_groupoid(C2), *point_groupoid()));
    auto a = disjoint_union_groupoid(*one_object_groupoid(C2), *point_groupoid());
    auto b = disjoint_union_groupoid(*point_groupoid(), *one_object_groupoid(C2));
    REQUIRE(equivalent_groupoids(*a, *b));
    // C4 vs V4: same order, non-isomorphic automorphism groups
    auto bc4 = one_object_groupoid(cyclic_group(4));
    auto bv4 = one_object_groupoid(product_group(C2, C2));
    REQUIRE_FALSE(equivalent_groupoids(*bc4, *bv4));
}

TEST_CASE("serialization is deterministic") {
    auto A = one_object_groupoid(cyclic_group(3));
    REQUIRE(serialize_groupoid(*A) ==
            serialize_groupoid(*one_object_groupoid(cyclic_group(3))));
    REQUIRE(groupoid_hash(*A).size() == 16);
}
