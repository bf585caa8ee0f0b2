#include <catch2/catch_amalgamated.hpp>

#include "eqalg/tambara.hpp"

using namespace eqalg;

namespace {

std::vector<Int> coeffs(const BurnsideElement& x) { return x.coeff; }

BurnsideElement class_gen(const GroupPtr& G, int c) {
    auto x = burnside_zero(G);
    x.coeff[c] = 1;
    return x;
}

/// All class generators plus one virtual mix per group.
std::vector<BurnsideElement> sample_elements(const GroupPtr& G) {
    std::vector<BurnsideElement> out;
    for (int c = 0; c < G->num_classes(); ++c) out.push_back(class_gen(G, c));
    auto mix = burnside_scale(Int(2), burnside_unit(G));
    mix = burnside_add(mix, burnside_neg(class_gen(G, 0)));
    out.push_back(mix);
    return out;
}

}  // namespace

TEST_CASE("burnside ring of the two letter symmetric group has rank 2") {
    auto S2 = symmetric_group(2);
    REQUIRE(S2->num_classes() == 2);
    auto t = marks_table(S2);
    REQUIRE(t->M.size() == 2);
    for (std::size_t c = 0; c < t->M.size(); ++c) {
        REQUIRE(t->M[c][c] > 0);
        for (std::size_t d = c + 1; d < t->M.size(); ++d) REQUIRE(t->M[c][d] == 0);
    }
    REQUIRE(marks(class_gen(S2, 0)).v == std::vector<Int>{2, 0});
    REQUIRE(marks(class_gen(S2, 1)).v == std::vector<Int>{1, 1});
}

TEST_CASE("class arithmetic matches disjoint unions and products") {
    for (auto G : {cyclic_group(2), cyclic_group(3)}) {
        auto sets = enumerate_gsets(G, 3);
        for (const auto& X : sets)
            for (const auto& Y : sets) {
                REQUIRE(burnside_class(disjoint_union(X, Y)) ==
                        burnside_add(burnside_class(X), burnside_class(Y)));
                REQUIRE(burnside_class(product_gset(X, Y)) ==
                        burnside_mul(burnside_class(X), burnside_class(Y)));
            }
    }

    auto C2 = cyclic_group(2);
    auto free2 = class_gen(C2, 0);
    SECTION("the free orbit squares to twice itself") {
        GSet P = product_gset(coset_gset(C2, {C2->e}), coset_gset(C2, {C2->e}));
        auto obs = orbits(P);
        REQUIRE(obs.size() == 2);
        for (const auto& o : obs) REQUIRE(o.stab.size() == 1);
        REQUIRE(coeffs(burnside_mul(free2, free2)) == std::vector<Int>{2, 0});
    }
    SECTION("zero and unit laws") {
        for (const auto& x : sample_elements(C2)) {
            REQUIRE(burnside_add(x, burnside_zero(C2)) == x);
            REQUIRE(burnside_mul(x, burnside_unit(C2)) == x);
            REQUIRE(burnside_mul(burnside_zero(C2), x) == burnside_zero(C2));
            REQUIRE(burnside_add(x, burnside_neg(x)) == burnside_zero(C2));
        }
    }
}

TEST_CASE("marks is a triangular ring embedding with exact inverse") {
    for (auto G : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
        auto t = marks_table(G);
        int k = G->num_classes();
        for (int c = 0; c < k; ++c) {
            REQUIRE(t->M[c][c] > 0);
            for (int d = c + 1; d < k; ++d) REQUIRE(t->M[c][d] == 0);
        }
        auto xs = sample_elements(G);
        for (const auto& x : xs)
            for (const auto& y : xs) {
                auto mx = marks(x), my = marks(y);
                auto ms = marks(burnside_add(x, y));
                auto mp = marks(burnside_mul(x, y));
                for (int d = 0; d < k; ++d) {
                    REQUIRE(ms.v[d] == mx.v[d] + my.v[d]);
                    REQUIRE(mp.v[d] == mx.v[d] * my.v[d]);
                }
            }
        for (const auto& x : xs) {
            auto r = unmarks(marks(x));
            REQUIRE(r.integral);
            REQUIRE(r.value == x);
        }
    }
    SECTION("non-integral vectors are reported, not silently rounded") {
        auto C2 = cyclic_group(2);
        auto r = unmarks(MarksVector{C2, {Int(1), Int(0)}});
        REQUIRE_FALSE(r.integral);
        REQUIRE(r.detail.find("1/2") != std::string::npos);
    }
}

TEST_CASE("transfers and restrictions match point-level induction and restriction") {
    for (auto G : {cyclic_group(2), symmetric_group(3)}) {
        for (const auto& H : G->subgroup_classes()) {
            const auto& emb = G->subgroup_group(H);
            for (const auto& X : enumerate_gsets(emb.group, 3)) {
                auto lhs = transfer(G, H, burnside_class(X));
                auto rhs = burnside_class(induce(G, H, X).Y);
                REQUIRE(lhs == rhs);
            }
            for (const auto& Y : enumerate_gsets(G, 4)) {
                auto lhs = restrict_b(G, H, burnside_class(Y));
                auto rhs = burnside_class(restrict_along(emb.group, emb.embed, Y));
                REQUIRE(lhs == rhs);
            }
        }
    }
    SECTION("frozen values over the order two group") {
        auto C2 = cyclic_group(2);
        auto e_only = std::vector<int>{C2->e};
        const auto& emb = C2->subgroup_group(e_only);
        REQUIRE(coeffs(transfer(C2, e_only, burnside_unit(emb.group))) ==
                std::vector<Int>{1, 0});
        REQUIRE(coeffs(restrict_b(C2, e_only, class_gen(C2, 0))) ==
                std::vector<Int>{2});
    }
}

TEST_CASE("effective and virtual norms agree") {
    auto C2 = cyclic_group(2);
    auto e_only = std::vector<int>{C2->e};
    const auto& emb = C2->subgroup_group(e_only);

    SECTION("two points from the trivial subgroup") {
        GSet X = trivial_gset(emb.group, 2);
        GSet N = norm_effective(C2, e_only, X);
        REQUIRE(N.n == 4);
        REQUIRE(fixed_point_count(N, {0, 1}) == 2);
        auto v = norm_virtual(C2, e_only, burnside_class(X));
        REQUIRE(coeffs(v) == std::vector<Int>{1, 2});
        REQUIRE(v == burnside_class(N));
        REQUIRE(norm_virtual(C2, e_only, burnside_zero(emb.group)) ==
                burnside_zero(C2));
    }

    SECTION("all small effective elements, index up to three") {
        for (auto G : {cyclic_group(2), symmetric_group(3)}) {
            for (const auto& H : G->subgroup_classes()) {
                if (G->n / static_cast<int>(H.size()) > 3) continue;
                const auto& he = G->subgroup_group(H);
                for (const auto& X : enumerate_gsets(he.group, 4)) {
                    auto eff = burnside_class(norm_effective(G, H, X));
                    auto vir = norm_virtual(G, H, burnside_class(X));
                    REQUIRE(eff == vir);
                }
            }
        }
    }

    SECTION("norm from the full subgroup is the identity") {
        auto S3 = symmetric_group(3);
        std::vector<int> all(S3->n);
        std::iota(all.begin(), all.end(), 0);
        const auto& fe = S3->subgroup_group(all);
        for (const auto& x : sample_elements(fe.group)) {
            auto v = norm_virtual(S3, all, x);
            REQUIRE(marks(v).v == marks(x).v);
        }
    }
}

TEST_CASE("norm of a sum expands like sections over the fold") {
    auto C2 = cyclic_group(2);
    auto e_only = std::vector<int>{C2->e};
    const auto& emb = C2->subgroup_group(e_only);
    for (const auto& X : enumerate_gsets(emb.group, 2))
        for (const auto& Y : enumerate_gsets(emb.group, 2)) {
            auto sum = burnside_add(burnside_class(X), burnside_class(Y));
            auto lhs = marks(norm_virtual(C2, e_only, sum));
            auto rhs = marks(burnside_class(
                norm_effective(C2, e_only, disjoint_union(X, Y))));
            REQUIRE(lhs == rhs);
        }

    auto S3 = symmetric_group(3);
    std::vector<int> C3;
    for (const auto& H : S3->subgroup_classes())
        if (H.size() == 3) C3 = H;
    const auto& ce = S3->subgroup_group(C3);
    for (const auto& X : enumerate_gsets(ce.group, 2))
        for (const auto& Y : enumerate_gsets(ce.group, 2)) {
            auto sum = burnside_add(burnside_class(X), burnside_class(Y));
            auto lhs = norm_virtual(S3, C3, sum);
            auto rhs = burnside_class(
                norm_effective(S3, C3, disjoint_union(X, Y)));
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("projection formula holds on class generators") {
    for (auto G : {cyclic_group(2), symmetric_group(3)}) {
        for (const auto& H : G->subgroup_classes()) {
            const auto& emb = G->subgroup_group(H);
            for (int ca = 0; ca < G->num_classes(); ++ca)
                for (int cb = 0; cb < emb.group->num_classes(); ++cb) {
                    auto a = class_gen(G, ca);
                    auto b = class_gen(emb.group, cb);
                    auto lhs = transfer(G, H,
                                        burnside_mul(restrict_b(G, H, a), b));
                    auto rhs = burnside_mul(a, transfer(G, H, b));
                    REQUIRE(lhs == rhs);
                }
        }
    }
}

TEST_CASE("inflations and deflations") {
    auto C2 = cyclic_group(2);
    std::vector<int> whole{0, 1};
    const auto& q = C2->quotient_group(whole);

    SECTION("frozen values for the full quotient of the order two group") {
        REQUIRE(coeffs(deflate_b(C2, whole, class_gen(C2, 0),
                                 DeflateMode::quotient)) == std::vector<Int>{1});
        REQUIRE(coeffs(deflate_b(C2, whole, class_gen(C2, 0),
                                 DeflateMode::fixed)) == std::vector<Int>{0});
        REQUIRE(coeffs(deflate_b(C2, whole, burnside_unit(C2),
                                 DeflateMode::fixed)) == std::vector<Int>{1});
        REQUIRE(inflate_b(C2, whole, burnside_unit(q.group)) ==
                burnside_unit(C2));
    }

    SECTION("inflation is a ring map, fixed deflation multiplicative, quotient additive") {
        auto S3 = symmetric_group(3);
        std::vector<int> C3;
        for (const auto& H : S3->subgroup_classes())
            if (H.size() == 3 && S3->is_normal(H)) C3 = H;
        REQUIRE(!C3.empty());
        const auto& qq = S3->quotient_group(C3);
        auto qs = sample_elements(qq.group);
        for (const auto& x : qs)
            for (const auto& y : qs) {
                REQUIRE(inflate_b(S3, C3, burnside_mul(x, y)) ==
                        burnside_mul(inflate_b(S3, C3, x), inflate_b(S3, C3, y)));
                REQUIRE(inflate_b(S3, C3, burnside_add(x, y)) ==
                        burnside_add(inflate_b(S3, C3, x), inflate_b(S3, C3, y)));
            }
        auto gs = sample_elements(S3);
        for (const auto& x : gs)
            for (const auto& y : gs) {
                REQUIRE(deflate_b(S3, C3, burnside_add(x, y), DeflateMode::quotient) ==
                        burnside_add(deflate_b(S3, C3, x, DeflateMode::quotient),
                                     deflate_b(S3, C3, y, DeflateMode::quotient)));
                REQUIRE(deflate_b(S3, C3, burnside_mul(x, y), DeflateMode::fixed) ==
                        burnside_mul(deflate_b(S3, C3, x, DeflateMode::fixed),
                                     deflate_b(S3, C3, y, DeflateMode::fixed)));
            }
    }
}

TEST_CASE("burnside oracle satisfies bispan functoriality") {
    SECTION("trivial group") {
        auto F = as_tambara_oracle(trivial_group());
        auto r = check_functoriality(F, gset_bispan_spec(), trivial_group(), 3);
        INFO(r.detail);
        REQUIRE(r.ok);
    }
    SECTION("order two group") {
        auto C2 = cyclic_group(2);
        auto F = as_tambara_oracle(C2);
        auto r = check_functoriality(F, gset_bispan_spec(), C2, 3);
        INFO(r.detail);
        REQUIRE(r.ok);
    }
    SECTION("symmetric group on three letters, small apices") {
        auto S3 = symmetric_group(3);
        auto F = as_tambara_oracle(S3);
        auto r = check_functoriality(F, gset_bispan_spec(), S3, 2);
        INFO(r.detail);
        REQUIRE(r.ok);
    }
}

TEST_CASE("norm past the fold evaluates consistently") {
    auto C2 = cyclic_group(2);
    auto spec = gset_bispan_spec();
    GSet fr = coset_gset(C2, {C2->e});
    GSet two = disjoint_union(fr, fr);
    GSet pt = trivial_gset(C2, 1);
    GSetMap fold = make_map(two, fr, {0, 1, 0, 1});
    GSetMap collapse = make_map(fr, pt, {0, 0});
    auto u = transfer_bispan(spec, fold);
    auto v = norm_bispan(spec, collapse);
    auto w = compose_bispans(u, v);
    auto F = as_tambara_oracle(C2);

    for (const auto& x : F.battery(two)) {
        auto seq = apply_bispan(F, v, apply_bispan(F, u, x));
        auto direct = apply_bispan(F, w, x);
        REQUIRE(F.equal(pt, direct, seq));
    }

    SECTION("the fold transfer adds the two summand values") {
        auto xs = F.battery(two);
        for (const auto& x : xs) {
            auto y = F.act_t(fold, x);
            REQUIRE(y.per_orbit.size() == 1);
            REQUIRE(y.per_orbit[0] ==
                    burnside_add(x.per_orbit[0], x.per_orbit[1]));
        }
    }

    SECTION("frozen composite value on the unit") {
        TambaraFunctorOracle::Value unit2;
        const auto& emb = C2->subgroup_group({C2->e});
        unit2.per_orbit = {burnside_unit(emb.group), burnside_unit(emb.group)};
        auto out = apply_bispan(F, w, unit2);
        REQUIRE(out.per_orbit.size() == 1);
        REQUIRE(coeffs(out.per_orbit[0]) == std::vector<Int>{1, 2});
    }
}

namespace {

/// Wrapper that corrupts the multiplicative pushforward.
struct CorruptedNormOracle {
    TambaraFunctorOracle base;
    using Value = TambaraFunctorOracle::Value;

    std::vector<Value> battery(const GSet& X) const { return base.battery(X); }
    Value act_r(const GSetMap& f, const Value& v) const { return base.act_r(f, v); }
    Value act_t(const GSetMap& f, const Value& v) const { return base.act_t(f, v); }
    Value act_n(const GSetMap& f, const Value& v) const {
        auto out = base.act_n(f, v);
        if (!out.per_orbit.empty())
            out.per_orbit[0] = burnside_add(out.per_orbit[0],
                                            burnside_unit(out.per_orbit[0].G));
        return out;
    }
    bool equal(const GSet& X, const Value& a, const Value& b) const {
        return base.equal(X, a, b);
    }
    Value combine(const GSet& A, const GSet& B, const Value& a, const Value& b) const {
        return base.combine(A, B, a, b);
    }
};

}  // namespace

TEST_CASE("a corrupted norm action fails the functoriality check") {
    auto C2 = cyclic_group(2);
    CorruptedNormOracle F{as_tambara_oracle(C2)};
    auto r = check_functoriality(F, gset_bispan_spec(), C2, 2);
    REQUIRE_FALSE(r.ok);
}
