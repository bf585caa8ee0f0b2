#include <catch2/catch_amalgamated.hpp>

#include "eqalg/bispan.hpp"

using namespace eqalg;

namespace {

GSetMap inverse_iso(const GSetMap& f) {
    std::vector<int> inv(f.dst.n);
    for (int x = 0; x < f.src.n; ++x) inv[f.f[x]] = x;
    return make_map(f.dst, f.src, std::move(inv));
}

// reference implementation: search for an apex-pair isomorphism commuting
// with all three legs on the nose
bool bispan_iso_search(const GSetBispan& u, const GSetBispan& v) {
    if (!(u.left() == v.left()) || !(u.right() == v.right())) return false;
    for (const auto& alpha : iso_maps(u.n.src, v.n.src)) {
        if (!(compose_maps(v.l, alpha).f == u.l.f)) continue;
        for (const auto& beta : iso_maps(u.n.dst, v.n.dst)) {
            if (!(compose_maps(v.m, beta).f == u.m.f)) continue;
            if (compose_maps(v.n, alpha).f == compose_maps(beta, u.n).f) return true;
        }
    }
    return false;
}

struct TerminalOracle {
    using Value = int;
    std::vector<Value> battery(const GSet&) const { return {0}; }
    Value act_r(const GSetMap&, const Value&) const { return 0; }
    Value act_n(const GSetMap&, const Value&) const { return 0; }
    Value act_t(const GSetMap&, const Value&) const { return 0; }
    bool equal(const GSet&, const Value&, const Value&) const { return true; }
    Value combine(const GSet&, const GSet&, const Value&, const Value&) const {
        return 0;
    }
};

}  // namespace

TEST_CASE("left classes of the induced factorization") {
    auto C2 = cyclic_group(2);
    GSet freeo = orbit_gset(C2, 0);
    GSet two = disjoint_union(freeo, freeo);
    GSetMap fold = make_map(two, freeo, {0, 1, 0, 1});
    REQUIRE(is_surjective(fold));
    REQUIRE(in_left_class(fold, LeftClass::full_surjective));
    REQUIRE_FALSE(in_left_class(fold, LeftClass::iso));
    REQUIRE(in_left_class(identity_map(freeo), LeftClass::iso));
}

TEST_CASE("identity bispans are units") {
    auto C2 = cyclic_group(2);
    auto spec = gset_bispan_spec();
    GSet freeo = orbit_gset(C2, 0);
    GSet pt = orbit_gset(C2, static_cast<int>(C2->subgroup_classes().size()) - 1);
    REQUIRE(pt.n == 1);

    GSetBispan u = make_gset_bispan(spec, identity_map(freeo),
                                    make_map(freeo, pt, {0, 0}), identity_map(pt));
    auto lu = compose_bispans(identity_bispan(spec, freeo), u);
    auto ur = compose_bispans(u, identity_bispan(spec, pt));
    REQUIRE(bispan_iso(lu, u));
    REQUIRE(bispan_iso(ur, u));
    REQUIRE(bispan_iso_search(lu, u));
}

TEST_CASE("norm past the fold reproduces the dependent product") {
    auto C2 = cyclic_group(2);
    auto spec = gset_bispan_spec();
    GSet freeo = orbit_gset(C2, 0);
    GSet pt = trivial_gset(C2, 1);
    GSet two = disjoint_union(freeo, freeo);
    GSetMap fold = make_map(two, freeo, {0, 1, 0, 1});
    GSetMap collapse = make_map(freeo, pt, {0, 0});

    auto w = compose_bispans(transfer_bispan(spec, fold), norm_bispan(spec, collapse));
    REQUIRE(w.left() == two);
    REQUIRE(w.right() == pt);
    // sum-leg source: 4 points as two fixed points plus one free orbit
    const GSet& Y = w.m.src;
    REQUIRE(Y.n == 4);
    REQUIRE(orbits(Y).size() == 3);
    REQUIRE(fixed_point_count(Y, {0}) == 4);
    REQUIRE(fixed_point_count(Y, {0, 1}) == 2);

    auto d = dependent_product(collapse, fold);
    auto expected = make_gset_bispan(spec, d.eps, d.n_prime, d.m_prime);
    REQUIRE(bispan_iso(w, expected));
    REQUIRE(bispan_iso_search(w, expected));
}

TEST_CASE("identity-norm bispans compose like spans") {
    auto C2 = cyclic_group(2);
    auto bspec = gset_bispan_spec();
    auto sspec = gset_triple();
    GSet pt = trivial_gset(C2, 1);
    GSet freeo = orbit_gset(C2, 0);

    auto as_bispan = [&](const GSetSpan& s) {
        return make_gset_bispan(bspec, s.back, identity_map(s.back.src), s.fwd);
    };
    int pairs = 0;
    for (const auto& hc : hom_enumerate(pt, freeo, sspec, 3)) {
        for (const auto& kc : hom_enumerate(freeo, pt, sspec, 3)) {
            const GSetSpan& s = hc.rep;
            const GSetSpan& t = kc.rep;
            auto via_bispans = compose_bispans(as_bispan(s), as_bispan(t));
            auto via_spans = as_bispan(compose_spans(s, t));
            REQUIRE(bispan_iso(via_bispans, via_spans));
            ++pairs;
        }
    }
    REQUIRE(pairs >= 4);
}

TEST_CASE("rewrite strategies agree and composition is associative") {
    auto C2 = cyclic_group(2);
    auto spec = gset_bispan_spec();
    GSet pt = orbit_gset(C2, static_cast<int>(C2->subgroup_classes().size()) - 1);
    GSet freeo = orbit_gset(C2, 0);
    std::vector<GSet> endpoints = {pt, freeo};

    int pairs = 0;
    for (const auto& A : endpoints)
        for (const auto& B : endpoints) {
            auto us = bispan_enumerate(A, B, spec, 2);
            for (const auto& C : endpoints) {
                auto vs = bispan_enumerate(B, C, spec, 2);
                for (const auto& u : us)
                    for (const auto& v : vs) {
                        auto wl = compose_bispans(u, v, false);
                        auto wr = compose_bispans(u, v, true);
                        REQUIRE(bispan_iso(wl, wr));
                        ++pairs;
                    }
            }
        }
    REQUIRE(pairs > 100);

    // associativity on a sampled battery
    auto us = bispan_enumerate(pt, freeo, spec, 2);
    auto vs = bispan_enumerate(freeo, pt, spec, 2);
    auto ws = bispan_enumerate(pt, pt, spec, 2);
    int triples = 0;
    for (std::size_t i = 0; i < us.size(); i += 2)
        for (std::size_t j = 0; j < vs.size(); j += 2)
            for (std::size_t k = 0; k < ws.size(); k += 2) {
                auto lhs = compose_bispans(compose_bispans(us[i], vs[j]), ws[k]);
                auto rhs = compose_bispans(us[i], compose_bispans(vs[j], ws[k]));
                REQUIRE(bispan_iso(lhs, rhs));
                ++triples;
            }
    REQUIRE(triples > 8);
}

TEST_CASE("canonical form matches the brute-force isomorphism search") {
    auto C2 = cyclic_group(2);
    auto spec = gset_bispan_spec();
    GSet pt = trivial_gset(C2, 1);
    GSet freeo = orbit_gset(C2, 0);

    auto reps = bispan_enumerate(pt, pt, spec, 2);
    REQUIRE(reps.size() >= 10);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            REQUIRE_FALSE(bispan_iso(reps[i], reps[j]));
            REQUIRE_FALSE(bispan_iso_search(reps[i], reps[j]));
        }

    // relabeling either apex by an equivariant bijection preserves the class
    for (const auto& u : reps) {
        for (const auto& tau : iso_maps(u.n.src, u.n.src)) {
            GSetBispan twisted = make_gset_bispan(u.spec, compose_maps(u.l, tau),
                                                  compose_maps(u.n, tau), u.m);
            REQUIRE(bispan_iso(u, twisted));
            REQUIRE(bispan_iso_search(u, twisted));
        }
        for (const auto& rho : iso_maps(u.n.dst, u.n.dst)) {
            GSetBispan twisted = make_gset_bispan(
                u.spec, u.l, compose_maps(rho, u.n), compose_maps(u.m, inverse_iso(rho)));
            REQUIRE(bispan_iso(u, twisted));
            REQUIRE(bispan_iso_search(u, twisted));
        }
    }

    // degree mismatch in the norm leg is detected
    GSetBispan deg1 = norm_bispan(spec, identity_map(pt));
    GSetBispan deg2 = norm_bispan(spec, make_map(freeo, pt, {0, 0}));
    GSetBispan deg2r = make_gset_bispan(spec, make_map(freeo, pt, {0, 0}),
                                        make_map(freeo, pt, {0, 0}), identity_map(pt));
    REQUIRE_FALSE(bispan_iso(deg1, deg2r));
    REQUIRE(deg2.right() == deg2r.right());
    REQUIRE_FALSE(bispan_iso(deg1, deg2r));
}

TEST_CASE("generator factorization recomposes to the bispan") {
    auto S3 = symmetric_group(3);
    auto spec = gset_bispan_spec();
    GSet x = orbit_gset(S3, 1);
    GSet pt = orbit_gset(S3, static_cast<int>(S3->subgroup_classes().size()) - 1);

    for (const auto& u : bispan_enumerate(pt, x, spec, 3)) {
        auto fs = factor_bispan(u);
        REQUIRE(is_bijective(fs[0].n));
        REQUIRE(is_bijective(fs[0].m));
        REQUIRE(is_bijective(fs[1].l));
        REQUIRE(is_bijective(fs[1].m));
        REQUIRE(is_bijective(fs[2].l));
        REQUIRE(is_bijective(fs[2].n));
        auto back = compose_bispans(compose_bispans(fs[0], fs[1]), fs[2]);
        REQUIRE(bispan_iso(back, u));
    }
}

TEST_CASE("triple specs satisfy their defining conditions") {
    auto C2 = cyclic_group(2);
    auto r = verify_bispan_spec(gset_bispan_spec(), C2, 2);
    INFO(r.detail);
    REQUIRE(r.ok);
    auto ro = verify_bispan_spec(orbital_bispan_spec(), C2, 2);
    INFO(ro.detail);
    REQUIRE(ro.ok);
    auto rg = verify_bispan_spec(global_bispan_spec(), C2, 2);
    INFO(rg.detail);
    REQUIRE(rg.ok);
}

TEST_CASE("groupoid dependent product: geometric fixed point shapes") {
    auto C2 = cyclic_group(2);
    GSet freeo = orbit_gset(C2, 0);
    auto ag = action_groupoid(freeo);
    auto pt = point_groupoid();
    GroupoidMap collapse =
        make_functor(ag.bg, pt, {0}, std::vector<int>(ag.bg->nmor(), 0));

    // sections of the free orbit over the full fiber: none
    auto d = groupoid_dependent_product(collapse, ag.to_bg);
    REQUIRE(d.Y->nobj == 0);
    REQUIRE(d.Xp->nobj == 0);

    // sections of the identity: exactly the point
    auto d2 = groupoid_dependent_product(collapse, identity_functor(ag.bg));
    REQUIRE(d2.Y->nobj == 1);
    REQUIRE(d2.Y->nmor() == 1);
    REQUIRE(is_faithful(d2.m_prime));
    REQUIRE(is_equivalence(d2.eps));
    REQUIRE(equivalent_groupoids(*d2.Xp, *ag.bg));
}

TEST_CASE("groupoid bispans compose with both strategies") {
    auto C2 = cyclic_group(2);
    auto bc2 = one_object_groupoid(C2);
    auto pt = point_groupoid();

    auto ib = identity_bispan(orbital_bispan_spec(), bc2);
    auto ww = compose_bispans(ib, ib);
    REQUIRE(bispan_iso(ww, ib));

    // norm past a fold: sections over the genuine fiber pick a summand
    auto spec = global_bispan_spec();
    auto two = disjoint_union_groupoid(*bc2, *bc2);
    GroupoidMap fold = make_functor(two, bc2, {0, 0}, {0, 1, 0, 1});
    GroupoidMap collapse =
        make_functor(bc2, pt, {0}, std::vector<int>(bc2->nmor(), 0));
    REQUIRE(in_class(fold, spec.sums));

    GroupoidBispan u = make_groupoid_bispan(spec, identity_functor(two),
                                            identity_functor(two), fold);
    GroupoidBispan v = make_groupoid_bispan(spec, identity_functor(bc2), collapse,
                                            identity_functor(pt));
    auto wl = compose_bispans(u, v, false);
    auto wr = compose_bispans(u, v, true);
    REQUIRE(wl.left() == two);
    REQUIRE(wl.right() == pt);
    REQUIRE(wl.m.src->nobj == 2);
    REQUIRE(wl.m.src->nmor() == 2);
    REQUIRE(in_class(wl.n, spec.norms));
    REQUIRE(in_class(wl.m, spec.sums));
    REQUIRE(bispan_iso(wl, wr));

    auto d = groupoid_dependent_product(collapse, fold);
    auto expected = make_groupoid_bispan(spec, d.eps, d.n_prime, d.m_prime);
    REQUIRE(bispan_iso(wl, expected));
}

TEST_CASE("terminal oracle passes the functoriality certificate") {
    auto C2 = cyclic_group(2);
    auto r = check_functoriality(TerminalOracle{}, gset_bispan_spec(), C2, 2);
    INFO(r.detail);
    REQUIRE(r.ok);
}
