#pragma once

#include "eqalg/groupoid.hpp"

namespace eqalg {

// --- leg classes and triple specs ---

enum class WorldTag { gset, groupoid };

/// Wide subcategory a span leg is required to lie in.
enum class MapClass { all, faithful, iso };

struct TripleSpec {
    WorldTag world = WorldTag::gset;
    MapClass backwards = MapClass::all;
    MapClass forwards = MapClass::all;

    bool operator==(const TripleSpec&) const = default;
};

/// Spans of G-sets with unconstrained legs.
inline TripleSpec gset_triple() {
    return {WorldTag::gset, MapClass::all, MapClass::all};
}

/// Spans of groupoids with faithful forwards legs.
inline TripleSpec orbital_triple() {
    return {WorldTag::groupoid, MapClass::all, MapClass::faithful};
}

inline bool is_injective(const GSetMap& f) {
    std::vector<char> hit(f.dst.n, 0);
    for (int v : f.f) {
        if (hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

inline bool is_bijective(const GSetMap& f) {
    return f.src.n == f.dst.n && is_injective(f);
}

/// For G-sets, faithful is read as injective and iso as bijective.
inline bool in_class(const GSetMap& f, MapClass c) {
    switch (c) {
        case MapClass::all: return true;
        case MapClass::faithful: return is_injective(f);
        case MapClass::iso: return is_bijective(f);
    }
    return false;
}

inline bool in_class(const GroupoidMap& F, MapClass c) {
    switch (c) {
        case MapClass::all: return true;
        case MapClass::faithful: return is_faithful(F);
        case MapClass::iso: return is_equivalence(F);
    }
    return false;
}

// --- spans of G-sets ---

/// left <- apex -> right. Both legs share the apex as their source.
struct GSetSpan {
    TripleSpec spec;
    GSetMap back;  // apex -> left
    GSetMap fwd;   // apex -> right

    const GSet& left() const { return back.dst; }
    const GSet& right() const { return fwd.dst; }
    const GSet& apex() const { return back.src; }
};

inline GSetSpan make_gset_span(TripleSpec spec, GSetMap back, GSetMap fwd) {
    require(spec.world == WorldTag::gset, "span: spec world is not gset");
    require(back.src == fwd.src, "span: legs disagree on the apex");
    require(in_class(back, spec.backwards), "span: backwards leg outside its class");
    require(in_class(fwd, spec.forwards), "span: forwards leg outside its class");
    return GSetSpan{spec, std::move(back), std::move(fwd)};
}

inline GSetSpan identity_span(const TripleSpec& spec, const GSet& X) {
    return make_gset_span(spec, identity_map(X), identity_map(X));
}

inline GSetMap point_map(const GSet& X) {
    return make_map(X, trivial_gset(X.G, 1), std::vector<int>(X.n, 0));
}

/// G/G <- G/H = G/H for subgroup class c: restriction to H.
inline GSetSpan restriction_span(const GroupPtr& G, int c,
                                 const TripleSpec& spec = gset_triple()) {
    GSet O = orbit_gset(G, c);
    return make_gset_span(spec, point_map(O), identity_map(O));
}

/// G/H = G/H -> G/G for subgroup class c: transfer from H.
inline GSetSpan transfer_span(const GroupPtr& G, int c,
                              const TripleSpec& spec = gset_triple()) {
    GSet O = orbit_gset(G, c);
    return make_gset_span(spec, identity_map(O), point_map(O));
}

// --- canonical form ---

/// Complete invariant of an apex orbit over both legs: stabilizer element
/// list and leg images at the orbit point minimizing this triple. Two orbits
/// admit a leg-commuting isomorphism iff their keys are equal.
struct SpanOrbitKey {
    std::vector<int> stab;
    int b = 0;
    int f = 0;

    auto operator<=>(const SpanOrbitKey&) const = default;
};

inline SpanOrbitKey span_orbit_key(const GSetSpan& s, const Orbit& o) {
    const GSet& A = s.apex();
    SpanOrbitKey best;
    bool first = true;
    for (int z : o.points) {
        SpanOrbitKey k;
        for (int g = 0; g < A.G->n; ++g)
            if (A.act[g][z] == z) k.stab.push_back(g);
        k.b = s.back.f[z];
        k.f = s.fwd.f[z];
        if (first || k < best) {
            best = std::move(k);
            first = false;
        }
    }
    return best;
}

/// Sorted orbit keys; equal signatures (with equal endpoints) characterize
/// isomorphism over the legs.
inline std::vector<SpanOrbitKey> span_signature(const GSetSpan& s) {
    std::vector<SpanOrbitKey> sig;
    for (const auto& o : orbits(s.apex())) sig.push_back(span_orbit_key(s, o));
    std::sort(sig.begin(), sig.end());
    return sig;
}

/// Rebuild a span from orbit keys: one coset orbit per key, points indexed
/// by least coset representative, legs transported from the key data.
inline GSetSpan span_from_keys(const TripleSpec& spec, const GSet& X, const GSet& Y,
                               const std::vector<SpanOrbitKey>& keys) {
    const GroupPtr& G = X.G;
    GSet apex = empty_gset(G);
    std::vector<int> bf, ff;
    for (const auto& k : keys) {
        std::vector<int> reps;
        std::vector<char> seen(G->n, 0);
        for (int g = 0; g < G->n; ++g) {
            if (seen[g]) continue;
            reps.push_back(g);
            for (int h : k.stab) seen[G->mul[g][h]] = 1;
        }
        for (int r : reps) {
            bf.push_back(X.act[r][k.b]);
            ff.push_back(Y.act[r][k.f]);
        }
        apex = disjoint_union(apex, coset_gset(G, k.stab));
    }
    return GSetSpan{spec, make_map(apex, X, std::move(bf)),
                    make_map(apex, Y, std::move(ff))};
}

inline GSetSpan canonical_span(const GSetSpan& s) {
    return span_from_keys(s.spec, s.left(), s.right(), span_signature(s));
}

/// Deterministic backtracking search for an apex isomorphism commuting with
/// both legs. Orbits match iff the target orbit holds a point agreeing with
/// the source base on stabilizer and leg images.
inline bool span_iso(const GSetSpan& s, const GSetSpan& t) {
    if (!(s.spec == t.spec) || !(s.left() == t.left()) || !(s.right() == t.right()))
        return false;
    auto so = orbits(s.apex());
    auto to = orbits(t.apex());
    int m = static_cast<int>(so.size());
    if (m != static_cast<int>(to.size())) return false;
    std::vector<std::vector<char>> ok(m, std::vector<char>(m, 0));
    const GSet& TA = t.apex();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int w : to[j].points) {
                std::vector<int> stab;
                for (int g = 0; g < TA.G->n; ++g)
                    if (TA.act[g][w] == w) stab.push_back(g);
                if (stab == so[i].stab && t.back.f[w] == s.back.f[so[i].base] &&
                    t.fwd.f[w] == s.fwd.f[so[i].base]) {
                    ok[i][j] = 1;
                    break;
                }
            }
    std::vector<char> used(m, 0);
    std::function<bool(int)> match = [&](int i) {
        if (i == m) return true;
        for (int j = 0; j < m; ++j)
            if (ok[i][j] && !used[j]) {
                used[j] = 1;
                if (match(i + 1)) return true;
                used[j] = 0;
            }
        return false;
    };
    return match(0);
}

/// Automorphisms over both endpoints: per orbit key, elements of the
/// stabilizer's normalizer fixing both leg images, modulo the stabilizer;
/// equal-key orbits may also be permuted.
inline Int span_aut(const GSetSpan& s) {
    auto sig = span_signature(s);
    const FiniteGroup& G = *s.apex().G;
    Int total = 1;
    for (std::size_t i = 0; i < sig.size();) {
        std::size_t j = i;
        while (j < sig.size() && sig[j] == sig[i]) ++j;
        long cnt = 0;
        for (int n : G.normalizer(sig[i].stab))
            if (s.left().act[n][sig[i].b] == sig[i].b &&
                s.right().act[n][sig[i].f] == sig[i].f)
                ++cnt;
        Int aut1 = Int(cnt) / Int(sig[i].stab.size());
        for (std::size_t k = i; k < j; ++k) {
            total *= aut1;
            total *= Int(k - i + 1);
        }
        i = j;
    }
    return total;
}

// --- composition, duality, factorization ---

inline GSetSpan compose_spans(const GSetSpan& s, const GSetSpan& t) {
    require(s.spec == t.spec, "compose: different triple specs");
    require(s.right() == t.left(), "compose: middle objects differ");
    auto sq = pullback(s.fwd, t.back);
    GSetMap back = compose_maps(s.back, sq.p1);
    GSetMap fwd = compose_maps(t.fwd, sq.p2);
    if (!in_class(back, s.spec.backwards))
        throw verify_error("compose: backwards leg left its class");
    if (!in_class(fwd, s.spec.forwards))
        throw verify_error("compose: forwards leg left its class");
    return GSetSpan{s.spec, std::move(back), std::move(fwd)};
}

/// Canonical representative of one span isomorphism class, with the
/// automorphism count of the representative over its endpoints.
struct SpanHomClass {
    GSetSpan rep;
    Int aut;
};

/// Orbit decomposition of the apex: the span as a formal sum of
/// single-orbit classes with multiplicities, sorted by key.
inline std::vector<std::pair<SpanHomClass, Int>> decompose_span(const GSetSpan& s) {
    auto sig = span_signature(s);
    std::vector<std::pair<SpanHomClass, Int>> out;
    for (std::size_t i = 0; i < sig.size();) {
        std::size_t j = i;
        while (j < sig.size() && sig[j] == sig[i]) ++j;
        GSetSpan rep = span_from_keys(s.spec, s.left(), s.right(), {sig[i]});
        Int aut = span_aut(rep);
        out.push_back({SpanHomClass{std::move(rep), std::move(aut)}, Int(j - i)});
        i = j;
    }
    return out;
}

inline TripleSpec dual_spec(TripleSpec s) {
    std::swap(s.backwards, s.forwards);
    return s;
}

/// Swap the legs into the opposite triple. Involutive on representatives.
inline GSetSpan dualize(const GSetSpan& s) {
    return GSetSpan{dual_spec(s.spec), s.fwd, s.back};
}

/// s = forwards ∘ backwards with backwards of shape (left <- apex = apex)
/// and forwards of shape (apex = apex -> right).
inline std::pair<GSetSpan, GSetSpan> factor_span(const GSetSpan& s) {
    GSetMap idz = identity_map(s.apex());
    return {GSetSpan{s.spec, s.back, idz}, GSetSpan{s.spec, idz, s.fwd}};
}

// --- hom enumeration (G-set world) ---

/// All isomorphism classes of spans X <- Z -> Y with |Z| <= cap and legs in
/// the triple's leg classes, ordered by apex size then signature.
inline std::vector<SpanHomClass> hom_enumerate(const GSet& X, const GSet& Y,
                                               const TripleSpec& spec, int cap) {
    require(spec.world == WorldTag::gset, "hom_enumerate: spec world is not gset");
    require(X.G == Y.G, "hom_enumerate: endpoints over different groups");
    std::set<std::vector<SpanOrbitKey>> sigs;
    for (const auto& A : enumerate_gsets(X.G, cap))
        for (const auto& b : all_maps(A, X)) {
            if (!in_class(b, spec.backwards)) continue;
            for (const auto& f : all_maps(A, Y)) {
                if (!in_class(f, spec.forwards)) continue;
                sigs.insert(span_signature(GSetSpan{spec, b, f}));
            }
        }
    std::vector<SpanHomClass> out;
    for (const auto& sig : sigs) {
        GSetSpan rep = span_from_keys(spec, X, Y, sig);
        Int aut = span_aut(rep);
        out.push_back({std::move(rep), std::move(aut)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SpanHomClass& a, const SpanHomClass& b) {
                         return a.rep.apex().n < b.rep.apex().n;
                     });
    return out;
}

// --- spans of groupoids ---

struct GroupoidSpan {
    TripleSpec spec;
    GroupoidMap back;  // apex -> left
    GroupoidMap fwd;   // apex -> right

    const GroupoidPtr& left() const { return back.dst; }
    const GroupoidPtr& right() const { return fwd.dst; }
    const GroupoidPtr& apex() const { return back.src; }
};

inline GroupoidSpan make_groupoid_span(TripleSpec spec, GroupoidMap back,
                                       GroupoidMap fwd) {
    require(spec.world == WorldTag::groupoid, "span: spec world is not groupoid");
    require(back.src == fwd.src, "span: legs disagree on the apex");
    require(in_class(back, spec.backwards), "span: backwards leg outside its class");
    require(in_class(fwd, spec.forwards), "span: forwards leg outside its class");
    return GroupoidSpan{spec, std::move(back), std::move(fwd)};
}

inline GroupoidSpan identity_span(const TripleSpec& spec, const GroupoidPtr& X) {
    return make_groupoid_span(spec, identity_functor(X), identity_functor(X));
}

/// Composition by iso-comma pullback of the inner legs.
inline GroupoidSpan compose_spans(const GroupoidSpan& s, const GroupoidSpan& t) {
    require(s.spec == t.spec, "compose: different triple specs");
    require(s.right() == t.left(), "compose: middle objects differ");
    auto sq = iso_comma_pullback(s.fwd, t.back);
    GroupoidMap back = compose_functors(s.back, sq.pA);
    GroupoidMap fwd = compose_functors(t.fwd, sq.pB);
    if (!in_class(back, s.spec.backwards))
        throw verify_error("compose: backwards leg left its class");
    if (!in_class(fwd, s.spec.forwards))
        throw verify_error("compose: forwards leg left its class");
    return GroupoidSpan{s.spec, std::move(back), std::move(fwd)};
}

inline GroupoidSpan dualize(const GroupoidSpan& s) {
    return GroupoidSpan{dual_spec(s.spec), s.fwd, s.back};
}

inline std::pair<GroupoidSpan, GroupoidSpan> factor_span(const GroupoidSpan& s) {
    GroupoidMap idz = identity_functor(s.apex());
    return {GroupoidSpan{s.spec, s.back, idz}, GroupoidSpan{s.spec, idz, s.fwd}};
}

/// Apex equivalence with both leg triangles commuting up to natural
/// isomorphism; exhaustive functor search.
inline bool span_iso(const GroupoidSpan& s, const GroupoidSpan& t) {
    if (!(s.spec == t.spec) || s.left() != t.left() || s.right() != t.right())
        return false;
    for (const auto& phi : all_functors(s.apex(), t.apex())) {
        if (!is_equivalence(phi)) continue;
        if (!naturally_isomorphic(compose_functors(t.back, phi), s.back)) continue;
        if (!naturally_isomorphic(compose_functors(t.fwd, phi), s.fwd)) continue;
        return true;
    }
    return false;
}

/// Leg-compatible self-equivalences of the apex, counted up to natural
/// isomorphism.
inline Int span_aut(const GroupoidSpan& s) {
    std::vector<GroupoidMap> found;
    for (const auto& phi : all_functors(s.apex(), s.apex())) {
        if (!is_equivalence(phi)) continue;
        if (!naturally_isomorphic(compose_functors(s.back, phi), s.back)) continue;
        if (!naturally_isomorphic(compose_functors(s.fwd, phi), s.fwd)) continue;
        bool dup = false;
        for (const auto& o : found)
            if (naturally_isomorphic(o, phi)) {
                dup = true;
                break;
            }
        if (!dup) found.push_back(phi);
    }
    return Int(found.size());
}

struct GroupoidSpanClass {
    GroupoidSpan rep;
    Int aut;
};

/// All span classes X <- Z -> Y with faithful forwards leg and at most cap
/// apex components. Apices are skeletal: disjoint unions of one-object
/// groupoids on subgroups of the automorphism groups of Y's components.
inline std::vector<GroupoidSpanClass> hom_enumerate(const GroupoidPtr& X,
                                                    const GroupoidPtr& Y,
                                                    const TripleSpec& spec, int cap) {
    require(spec.world == WorldTag::groupoid, "hom_enumerate: spec world is not groupoid");
    require(spec.forwards == MapClass::faithful,
            "hom_enumerate: groupoid world needs a faithful forwards class");
    std::vector<GroupoidSpan> atoms;
    for (const auto& cy : components(*Y)) {
        const auto& cls = cy.skeleton->subgroup_classes();
        for (const auto& K : cls) {
            auto emb = cy.skeleton->subgroup_group(K);
            auto bk = one_object_groupoid(emb.group);
            std::vector<int> mm(emb.group->n);
            for (int i = 0; i < emb.group->n; ++i) mm[i] = cy.loop_mor[emb.embed[i]];
            auto fwd = make_functor(bk, Y, {cy.base}, std::move(mm));
            for (const auto& b : all_functors(bk, X)) {
                if (!in_class(b, spec.backwards)) continue;
                GroupoidSpan s{spec, b, fwd};
                bool dup = false;
                for (const auto& a : atoms)
                    if (span_iso(a, s)) {
                        dup = true;
                        break;
                    }
                if (!dup) atoms.push_back(std::move(s));
            }
        }
    }
    // classes = multisets of atoms of size <= cap, in index order
    std::vector<GroupoidSpanClass> out;
    std::vector<int> pick;
    std::function<void(int)> emit = [&](int lo) {
        GroupoidPtr apex = discrete_groupoid(0);
        GroupoidMap back = make_functor(apex, X, {}, {});
        GroupoidMap fwd = make_functor(apex, Y, {}, {});
        for (int idx : pick) {
            const GroupoidSpan& a = atoms[idx];
            GroupoidPtr u = disjoint_union_groupoid(*apex, *a.apex());
            std::vector<int> om = back.omap, bm = back.mmap, fm = fwd.mmap;
            std::vector<int> om2 = fwd.omap;
            om.insert(om.end(), a.back.omap.begin(), a.back.omap.end());
            om2.insert(om2.end(), a.fwd.omap.begin(), a.fwd.omap.end());
            bm.insert(bm.end(), a.back.mmap.begin(), a.back.mmap.end());
            fm.insert(fm.end(), a.fwd.mmap.begin(), a.fwd.mmap.end());
            back = make_functor(u, X, std::move(om), std::move(bm));
            fwd = make_functor(u, Y, std::move(om2), std::move(fm));
            apex = std::move(u);
        }
        // atoms are class-checked individually; a union can still leave a
        // non-wide backwards class
        if (in_class(back, spec.backwards)) {
            GroupoidSpan s{spec, back, fwd};
            Int aut = span_aut(s);
            out.push_back({std::move(s), std::move(aut)});
        }
        if (static_cast<int>(pick.size()) == cap) return;
        for (int i = lo; i < static_cast<int>(atoms.size()); ++i) {
            pick.push_back(i);
            emit(i);
            pick.pop_back();
        }
    };
    emit(0);
    std::stable_sort(out.begin(), out.end(),
                     [](const GroupoidSpanClass& a, const GroupoidSpanClass& b) {
                         return a.rep.apex()->nobj < b.rep.apex()->nobj;
                     });
    return out;
}

// --- class stability under pullback ---

/// Checks, on each cospan (f, g), that pullback preserves the classes the
/// spec assigns to the legs: the projection opposite a forwards-class map is
/// again forwards-class, and likewise for backwards.
inline CheckResult verify_triple_stability(
    const TripleSpec& spec,
    const std::vector<std::pair<GroupoidMap, GroupoidMap>>& cospans) {
    require(spec.world == WorldTag::groupoid, "stability: groupoid cospans expected");
    int i = 0;
    for (const auto& [f, g] : cospans) {
        auto sq = iso_comma_pullback(f, g);
        if (in_class(f, spec.forwards) && !in_class(sq.pB, spec.forwards))
            return {false, "cospan " + std::to_string(i) + ": forwards class not stable"};
        if (in_class(g, spec.backwards) && !in_class(sq.pA, spec.backwards))
            return {false, "cospan " + std::to_string(i) + ": backwards class not stable"};
        ++i;
    }
    return {true, ""};
}

// --- arrow-category census ---

inline std::vector<GSetMap> iso_maps(const GSet& A, const GSet& B) {
    std::vector<GSetMap> out;
    if (A.n != B.n) return out;
    for (const auto& m : all_maps(A, B))
        if (is_bijective(m)) out.push_back(m);
    return out;
}

/// Square isomorphism of arrows: bijections on sources and targets
/// commuting with the arrows.
inline bool arrow_iso(const GSetMap& f, const GSetMap& g) {
    for (const auto& a : iso_maps(f.src, g.src))
        for (const auto& b : iso_maps(f.dst, g.dst))
            if (compose_maps(g, a) == compose_maps(b, f)) return true;
    return false;
}

/// The commuting square (f ∘ u = v ∘ h) is a pullback iff z -> (u z, h z) is
/// a bijection onto the fiber product.
inline bool square_is_pullback(const GSetMap& f, const GSetMap& v, const GSetMap& u,
                               const GSetMap& h) {
    auto sq = pullback(f, v);
    if (sq.P.n != u.src.n) return false;
    std::set<std::pair<int, int>> seen;
    for (int z = 0; z < u.src.n; ++z)
        if (!seen.insert({u.f[z], h.f[z]}).second) return false;
    return true;
}

/// Census of the arrow category of forwards-class maps with span morphisms
/// whose left square is a pullback. Diagnostic only: counts, no universal
/// property claimed.
struct ArrowEnvReport {
    std::vector<GSetMap> objects;        // representatives up to square iso
    std::vector<std::vector<Int>> homs;  // morphism class counts per pair

    Int object_count() const { return Int(objects.size()); }
    Int morphism_count() const {
        Int t = 0;
        for (const auto& row : homs)
            for (const auto& c : row) t += c;
        return t;
    }
};

inline ArrowEnvReport arrow_env_enumerate(const GroupPtr& G, const TripleSpec& spec,
                                          int cap) {
    require(spec.world == WorldTag::gset,
            "arrow census: only the gset world is supported");
    ArrowEnvReport rep;
    auto sets = enumerate_gsets(G, cap);
    for (const auto& A : sets)
        for (const auto& B : sets)
            for (const auto& f : all_maps(A, B)) {
                if (!in_class(f, spec.forwards)) continue;
                bool dup = false;
                for (const auto& o : rep.objects)
                    if (arrow_iso(o, f)) {
                        dup = true;
                        break;
                    }
                if (!dup) rep.objects.push_back(f);
            }
    int n = static_cast<int>(rep.objects.size());
    // self-squares of each apex arrow, for orbit dedup of morphism tuples
    std::vector<std::vector<std::pair<GSetMap, GSetMap>>> auts(n);
    for (int hi = 0; hi < n; ++hi) {
        const GSetMap& h = rep.objects[hi];
        for (const auto& a : iso_maps(h.src, h.src))
            for (const auto& b : iso_maps(h.dst, h.dst))
                if (compose_maps(h, a) == compose_maps(b, h))
                    auts[hi].push_back({a, b});
    }
    rep.homs.assign(n, std::vector<Int>(n, Int(0)));
    for (int fi = 0; fi < n; ++fi)
        for (int gi = 0; gi < n; ++gi) {
            const GSetMap& f = rep.objects[fi];
            const GSetMap& g = rep.objects[gi];
            Int count = 0;
            for (int hi = 0; hi < n; ++hi) {
                const GSetMap& h = rep.objects[hi];
                std::set<std::array<std::vector<int>, 4>> classes;
                for (const auto& u : all_maps(h.src, f.src))
                    for (const auto& v : all_maps(h.dst, f.dst)) {
                        if (!(compose_maps(f, u) == compose_maps(v, h))) continue;
                        if (!square_is_pullback(f, v, u, h)) continue;
                        for (const auto& p : all_maps(h.src, g.src))
                            for (const auto& q : all_maps(h.dst, g.dst)) {
                                if (!(compose_maps(g, p) == compose_maps(q, h)))
                                    continue;
                                std::array<std::vector<int>, 4> best = {
                                    u.f, v.f, p.f, q.f};
                                for (const auto& [a, b] : auts[hi]) {
                                    std::array<std::vector<int>, 4> cand = {
                                        compose_maps(u, a).f, compose_maps(v, b).f,
                                        compose_maps(p, a).f, compose_maps(q, b).f};
                                    if (cand < best) best = std::move(cand);
                                }
                                classes.insert(std::move(best));
                            }
                    }
                count += Int(classes.size());
            }
            rep.homs[fi][gi] = std::move(count);
        }
    return rep;
}

}  // namespace eqalg
