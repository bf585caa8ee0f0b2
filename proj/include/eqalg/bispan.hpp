#pragma once
// Three-legged morphisms A <- X -> Y -> B composing by the distributivity
// rewrite.  Normal form is T ∘ N ∘ R with the sum leg outermost; the only
// nontrivial rewrite commutes a norm past a sum through a dependent product.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqalg/base.hpp"
#include "eqalg/group.hpp"
#include "eqalg/groupoid.hpp"
#include "eqalg/gset.hpp"
#include "eqalg/span.hpp"

namespace eqalg {

// --- triple specs ---

/// Left complement of the summation class under the (E, M) factorization.
enum class LeftClass { iso, full_surjective };

struct BispanSpec {
    WorldTag world = WorldTag::gset;
    MapClass norms = MapClass::all;    // class of the middle (norm) leg
    MapClass sums = MapClass::all;     // class of the right (sum) leg
    LeftClass lefts = LeftClass::iso;  // induced left class

    bool operator==(const BispanSpec&) const = default;
};

/// Finite G-sets with unconstrained norm and sum legs.
inline BispanSpec gset_bispan_spec() {
    return {WorldTag::gset, MapClass::all, MapClass::all, LeftClass::iso};
}

/// Finite groupoids with faithful norm and sum legs.
inline BispanSpec orbital_bispan_spec() {
    return {WorldTag::groupoid, MapClass::faithful, MapClass::faithful,
            LeftClass::full_surjective};
}

/// Finite groupoids with arbitrary norms and faithful sums.
inline BispanSpec global_bispan_spec() {
    return {WorldTag::groupoid, MapClass::all, MapClass::faithful,
            LeftClass::full_surjective};
}

inline bool is_surjective(const GSetMap& f) {
    std::vector<char> hit(f.dst.n, 0);
    for (int v : f.f) hit[v] = 1;
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

inline bool in_left_class(const GSetMap& f, LeftClass c) {
    return c == LeftClass::iso ? is_bijective(f) : is_surjective(f);
}

inline bool in_left_class(const GroupoidMap& F, LeftClass c) {
    if (c == LeftClass::iso) return is_equivalence(F);
    return is_full(F) && is_essentially_surjective(F);
}

// --- G-set bispans ---

struct GSetBispan {
    BispanSpec spec;
    GSetMap l;  // X -> A, restriction leg
    GSetMap n;  // X -> Y, norm leg
    GSetMap m;  // Y -> B, sum leg

    const GSet& left() const { return l.dst; }
    const GSet& right() const { return m.dst; }
};

inline GSetBispan make_gset_bispan(BispanSpec spec, GSetMap l, GSetMap n, GSetMap m) {
    require(spec.world == WorldTag::gset, "bispan: spec world is not finite G-sets");
    require(l.src == n.src, "bispan: restriction and norm legs share a source");
    require(n.dst == m.src, "bispan: sum leg starts at the norm target");
    require(in_class(n, spec.norms), "bispan: norm leg outside its class");
    require(in_class(m, spec.sums), "bispan: sum leg outside its class");
    return GSetBispan{spec, std::move(l), std::move(n), std::move(m)};
}

inline GSetBispan identity_bispan(const BispanSpec& spec, const GSet& X) {
    return make_gset_bispan(spec, identity_map(X), identity_map(X), identity_map(X));
}

/// A <- X = X = X
inline GSetBispan restriction_bispan(const BispanSpec& spec, const GSetMap& f) {
    return make_gset_bispan(spec, f, identity_map(f.src), identity_map(f.src));
}

/// X = X -> Y = Y
inline GSetBispan norm_bispan(const BispanSpec& spec, const GSetMap& n) {
    return make_gset_bispan(spec, identity_map(n.src), n, identity_map(n.dst));
}

/// Y = Y = Y -> B
inline GSetBispan transfer_bispan(const BispanSpec& spec, const GSetMap& m) {
    return make_gset_bispan(spec, identity_map(m.src), identity_map(m.src), m);
}

// --- canonical form and isomorphism ---

/// Complete invariant of one Y-orbit block: sum-leg data of the orbit at a
/// minimizing base point, plus per X-orbit the stabilizer, the coset label of
/// its norm image in that base's labeling, and its restriction-leg image.
struct BispanBlockKey {
    std::vector<int> ystab;
    int mimg = 0;
    std::vector<SpanOrbitKey> xkeys;  // reused shape: (stab, norm label, l image)

    auto operator<=>(const BispanBlockKey&) const = default;
};

/// Sorted block keys.  With equal endpoints and spec, equal signatures
/// characterize the existence of an apex-pair isomorphism commuting with all
/// three legs: any such pair matches blocks with equal keys, and conversely a
/// block key determines its block up to exactly such an isomorphism.
inline std::vector<BispanBlockKey> bispan_signature(const GSetBispan& u) {
    const GSet& X = u.n.src;
    const GSet& Y = u.n.dst;
    const GroupPtr& G = Y.G;
    auto stab_of = [&](const GSet& S, int p) {
        std::vector<int> st;
        for (int g = 0; g < G->n; ++g)
            if (S.act[g][p] == p) st.push_back(g);
        return st;
    };
    auto yorbs = orbits(Y);
    std::vector<int> yorb_of(Y.n, -1);
    for (std::size_t i = 0; i < yorbs.size(); ++i)
        for (int y : yorbs[i].points) yorb_of[y] = static_cast<int>(i);
    std::vector<std::vector<Orbit>> xin(yorbs.size());
    for (const auto& xo : orbits(X))
        xin[yorb_of[u.n.f[xo.points.front()]]].push_back(xo);

    std::vector<BispanBlockKey> sig;
    for (std::size_t oi = 0; oi < yorbs.size(); ++oi) {
        const auto& yo = yorbs[oi];
        // base candidates minimize (stabilizer, sum image)
        std::pair<std::vector<int>, int> best;
        std::vector<int> cands;
        for (int y : yo.points) {
            std::pair<std::vector<int>, int> k{stab_of(Y, y), u.m.f[y]};
            if (cands.empty() || k < best) {
                best = std::move(k);
                cands = {y};
            } else if (k == best) {
                cands.push_back(y);
            }
        }
        BispanBlockKey blk;
        bool first = true;
        for (int y0 : cands) {
            // label g.y0 by the rank of the least such g among the block
            std::vector<int> gmin(Y.n, -1);
            for (int g = G->n - 1; g >= 0; --g) gmin[Y.act[g][y0]] = g;
            std::vector<int> ranks;
            for (int y : yo.points) ranks.push_back(gmin[y]);
            std::sort(ranks.begin(), ranks.end());
            BispanBlockKey cand;
            cand.ystab = best.first;
            cand.mimg = best.second;
            for (const auto& xo : xin[oi]) {
                SpanOrbitKey xk;
                bool xfirst = true;
                for (int x : xo.points) {
                    int lab = static_cast<int>(
                        std::lower_bound(ranks.begin(), ranks.end(), gmin[u.n.f[x]]) -
                        ranks.begin());
                    SpanOrbitKey k{stab_of(X, x), lab, u.l.f[x]};
                    if (xfirst || k < xk) {
                        xk = std::move(k);
                        xfirst = false;
                    }
                }
                cand.xkeys.push_back(std::move(xk));
            }
            std::sort(cand.xkeys.begin(), cand.xkeys.end());
            if (first || cand < blk) {
                blk = std::move(cand);
                first = false;
            }
        }
        sig.push_back(std::move(blk));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

inline bool bispan_iso(const GSetBispan& u, const GSetBispan& v) {
    if (!(u.spec == v.spec)) return false;
    if (!(u.left() == v.left()) || !(u.right() == v.right())) return false;
    return bispan_signature(u) == bispan_signature(v);
}

// --- composition by generator-word rewriting ---

enum class GenType { R, N, T };

template <class Map>
struct BispanGen {
    GenType t;
    Map f;
};

/// Pairs listed in application order; (R,N), (R,T), (N,T) are already normal.
inline bool bispan_reducible(GenType a, GenType b) {
    if (a == b) return true;
    if (b == GenType::R) return true;
    return a == GenType::T && b == GenType::N;
}

/// Rewrites until the word is an ascending subsequence of [R, N, T].  The
/// strategy flag picks the leftmost or rightmost reducible pair; both must
/// reach isomorphic normal forms.
template <class Map, class Ops>
void normalize_bispan_word(std::vector<BispanGen<Map>>& w, const Ops& ops,
                           bool rightmost) {
    for (int step = 0;; ++step) {
        check_capacity(step < 256, "bispan: rewrite step limit exceeded");
        int pos = -1;
        for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i)
            if (bispan_reducible(w[i].t, w[i + 1].t)) {
                pos = i;
                if (!rightmost) break;
            }
        if (pos < 0) return;
        BispanGen<Map> a = w[pos], b = w[pos + 1];
        if (a.t == b.t) {
            w[pos] = {a.t, ops.merge(a.t, a.f, b.f)};
            w.erase(w.begin() + pos + 1);
        } else if (b.t == GenType::R) {
            auto pr = ops.past_r(a.f, b.f);
            w[pos] = {GenType::R, pr.first};
            w[pos + 1] = {a.t, pr.second};
        } else {  // (T, N): norm past sum through the dependent product
            auto d = ops.dist(b.f, a.f);
            w[pos] = {GenType::R, d[0]};
            w[pos + 1] = {GenType::N, d[1]};
            w.insert(w.begin() + pos + 2, BispanGen<Map>{GenType::T, d[2]});
        }
    }
}

struct GSetBispanOps {
    GSetMap merge(GenType t, const GSetMap& a, const GSetMap& b) const {
        // restrictions act contravariantly
        return t == GenType::R ? compose_maps(a, b) : compose_maps(b, a);
    }
    std::pair<GSetMap, GSetMap> past_r(const GSetMap& q, const GSetMap& f) const {
        auto sq = pullback(q, f);
        return {sq.p1, sq.p2};
    }
    std::array<GSetMap, 3> dist(const GSetMap& n, const GSetMap& m) const {
        auto d = dependent_product(n, m);
        return {d.eps, d.n_prime, d.m_prime};
    }
};

inline GSetBispan compose_bispans(const GSetBispan& u, const GSetBispan& v,
                                  bool rightmost = false) {
    require(u.spec == v.spec, "compose_bispans: specs differ");
    require(u.right() == v.left(), "compose_bispans: middle objects differ");
    std::vector<BispanGen<GSetMap>> w = {{GenType::R, u.l}, {GenType::N, u.n},
                                         {GenType::T, u.m}, {GenType::R, v.l},
                                         {GenType::N, v.n}, {GenType::T, v.m}};
    normalize_bispan_word(w, GSetBispanOps{}, rightmost);
    std::size_t i = 0;
    GSetMap l = (i < w.size() && w[i].t == GenType::R) ? w[i++].f
                                                       : identity_map(u.left());
    GSetMap n = (i < w.size() && w[i].t == GenType::N) ? w[i++].f : identity_map(l.src);
    GSetMap m = (i < w.size() && w[i].t == GenType::T) ? w[i++].f : identity_map(n.dst);
    require(i == w.size() && m.dst == v.right(), "compose_bispans: bad normal form");
    if (!in_class(n, u.spec.norms) || !in_class(m, u.spec.sums))
        throw verify_error("compose_bispans: composite legs left their classes");
    return make_gset_bispan(u.spec, std::move(l), std::move(n), std::move(m));
}

/// The three generator bispans whose composite recovers the input.
inline std::array<GSetBispan, 3> factor_bispan(const GSetBispan& u) {
    return {restriction_bispan(u.spec, u.l), norm_bispan(u.spec, u.n),
            transfer_bispan(u.spec, u.m)};
}

// --- enumeration ---

/// Iso classes of bispans A -> B with both apices at most cap points,
/// deterministically ordered by apex sizes.
inline std::vector<GSetBispan> bispan_enumerate(const GSet& A, const GSet& B,
                                                const BispanSpec& spec, int cap) {
    require(spec.world == WorldTag::gset, "bispan_enumerate: finite G-set world only");
    require(A.G == B.G, "bispan_enumerate: different groups");
    std::map<std::vector<BispanBlockKey>, GSetBispan> seen;
    for (const auto& Yc : enumerate_gsets(A.G, cap)) {
        for (const auto& m : all_maps(Yc, B)) {
            if (!in_class(m, spec.sums)) continue;
            for (const auto& Xc : enumerate_gsets(A.G, cap)) {
                for (const auto& n : all_maps(Xc, Yc)) {
                    if (!in_class(n, spec.norms)) continue;
                    for (const auto& l : all_maps(Xc, A)) {
                        GSetBispan u{spec, l, n, m};
                        auto sig = bispan_signature(u);
                        seen.emplace(std::move(sig), std::move(u));
                    }
                }
            }
        }
    }
    std::vector<GSetBispan> out;
    out.reserve(seen.size());
    for (auto& kv : seen) out.push_back(std::move(kv.second));
    std::stable_sort(out.begin(), out.end(),
                     [](const GSetBispan& a, const GSetBispan& b) {
                         if (a.n.src.n != b.n.src.n) return a.n.src.n < b.n.src.n;
                         return a.m.src.n < b.m.src.n;
                     });
    return out;
}

// --- groupoid world ---

struct GroupoidBispan {
    BispanSpec spec;
    GroupoidMap l;  // X -> A
    GroupoidMap n;  // X -> Y
    GroupoidMap m;  // Y -> B

    const GroupoidPtr& left() const { return l.dst; }
    const GroupoidPtr& right() const { return m.dst; }
};

inline GroupoidBispan make_groupoid_bispan(BispanSpec spec, GroupoidMap l,
                                           GroupoidMap n, GroupoidMap m) {
    require(spec.world == WorldTag::groupoid, "bispan: spec world is not groupoids");
    require(l.src == n.src, "bispan: restriction and norm legs share a source");
    require(n.dst == m.src, "bispan: sum leg starts at the norm target");
    require(in_class(n, spec.norms), "bispan: norm leg outside its class");
    require(in_class(m, spec.sums), "bispan: sum leg outside its class");
    return GroupoidBispan{spec, std::move(l), std::move(n), std::move(m)};
}

inline GroupoidBispan identity_bispan(const BispanSpec& spec, const GroupoidPtr& X) {
    return make_groupoid_bispan(spec, identity_functor(X), identity_functor(X),
                                identity_functor(X));
}

/// Dependent product of a faithful m: X -> A along n: A -> B, with the full
/// distributivity square.  Objects of the product over b are section data
/// (sigma, eta): a functor sigma from the comma fiber of n at b to X plus a
/// natural isomorphism eta from m.sigma to the fiber projection; morphisms
/// over beta: b -> b' are the unique modifications compatible with eta, so
/// the projection to B is faithful.  The groupoid is skeletalized.
struct GroupoidDistributivity {
    GroupoidMap n;        // A -> B
    GroupoidMap m;        // X -> A
    GroupoidPtr Y;
    GroupoidMap m_prime;  // Y -> B
    GroupoidPtr Xp;
    GroupoidMap n_prime;  // Xp -> Y
    GroupoidMap m_dbl;    // Xp -> A
    GroupoidMap eps;      // Xp -> X
};

inline GroupoidDistributivity groupoid_dependent_product(const GroupoidMap& n,
                                                         const GroupoidMap& m) {
    require(m.dst == n.src, "dependent product: m must land in the source of n");
    require(is_faithful(m), "dependent product: sum leg must be faithful");
    const GroupoidPtr& A = n.src;
    const GroupoidPtr& B = n.dst;
    const GroupoidPtr& X = m.src;
    auto pt = point_groupoid();

    // unique X-morphism over a given A-morphism, or -1
    auto lift = [&](int x, int x2, int rho) {
        for (int e : X->hom[x][x2])
            if (m.mmap[e] == rho) return e;
        return -1;
    };

    struct Fiber {
        IsoCommaSquare sq;
        std::map<std::pair<int, int>, int> idx;  // (a, gamma) -> object
        std::vector<Component> comps;
    };
    std::vector<Fiber> fibers;
    for (int b = 0; b < B->nobj; ++b) {
        Fiber fb{iso_comma_pullback(n, make_functor(pt, B, {b}, {B->idm[b]})), {}, {}};
        for (std::size_t i = 0; i < fb.sq.objs.size(); ++i)
            fb.idx[{fb.sq.objs[i][0], fb.sq.objs[i][2]}] = static_cast<int>(i);
        fb.comps = components(*fb.sq.apex);
        fibers.push_back(std::move(fb));
    }

    // section data: per fiber object (X object, A-morphism m(x) -> pr(k)),
    // per fiber morphism its unique lift
    struct SectionObj {
        int b = 0;
        std::vector<std::pair<int, int>> xeta;
        std::vector<int> smor;
    };
    std::vector<SectionObj> raw;
    for (int b = 0; b < B->nobj; ++b) {
        const Fiber& fb = fibers[b];
        const FiniteGroupoid& F = *fb.sq.apex;
        // families per component, then the product across components
        std::vector<std::vector<std::vector<std::pair<int, int>>>> per_comp;
        bool dead = false;
        for (const auto& c : fb.comps) {
            std::vector<std::vector<std::pair<int, int>>> fams;
            int k0 = c.base;
            int a0 = fb.sq.pA.omap[k0];
            std::vector<int> rest;
            for (int k : c.objects)
                if (k != k0) rest.push_back(k);
            for (int x0 = 0; x0 < X->nobj; ++x0) {
                for (int eta0 : A->hom[m.omap[x0]][a0]) {
                    std::vector<std::pair<int, int>> fam(F.nobj, {-1, -1});
                    fam[k0] = {x0, eta0};
                    std::vector<int> outx;
                    for (int e = 0; e < X->nmor(); ++e)
                        if (X->src[e] == x0) outx.push_back(e);
                    // odometer over choices of a morphism out of x0 per object
                    std::vector<std::size_t> pick(rest.size(), 0);
                    while (true) {
                        for (std::size_t i = 0; i < rest.size(); ++i) {
                            int k = rest[i], e = outx[pick[i]];
                            int alpha = fb.sq.pA.mmap[F.invm[c.tree[k]]];  // a0 -> a_k
                            int eta = A->comp_.at(A->key(
                                A->comp_.at(A->key(alpha, eta0)), A->invm[m.mmap[e]]));
                            fam[k] = {X->tgt[e], eta};
                        }
                        bool ok = true;
                        for (int e = 0; ok && e < F.nmor(); ++e) {
                            int k = F.src[e], k2 = F.tgt[e];
                            if (fam[k].first < 0 || fam[k2].first < 0) continue;
                            int rho = A->comp_.at(
                                A->key(A->invm[fam[k2].second],
                                       A->comp_.at(A->key(fb.sq.pA.mmap[e],
                                                          fam[k].second))));
                            ok = lift(fam[k].first, fam[k2].first, rho) >= 0;
                        }
                        if (ok) {
                            fams.push_back(fam);
                            check_capacity(fams.size() <= 4096,
                                           "dependent product: section cap exceeded");
                        }
                        std::size_t j = 0;
                        while (j < pick.size() && ++pick[j] == outx.size())
                            pick[j++] = 0;
                        if (j == pick.size()) break;
                    }
                }
            }
            if (fams.empty() && !c.objects.empty()) {
                dead = true;
                break;
            }
            per_comp.push_back(std::move(fams));
        }
        if (dead) continue;
        // cartesian product across components
        std::vector<SectionObj> here{{b, std::vector<std::pair<int, int>>(F.nobj, {-1, -1}), {}}};
        for (std::size_t ci = 0; ci < per_comp.size(); ++ci) {
            std::vector<SectionObj> next;
            for (const auto& so : here)
                for (const auto& fam : per_comp[ci]) {
                    SectionObj s2 = so;
                    for (int k : fb.comps[ci].objects) s2.xeta[k] = fam[k];
                    next.push_back(std::move(s2));
                    check_capacity(next.size() <= 4096,
                                   "dependent product: section cap exceeded");
                }
            here = std::move(next);
        }
        for (auto& so : here) {
            so.smor.assign(F.nmor(), -1);
            for (int e = 0; e < F.nmor(); ++e) {
                int k = F.src[e], k2 = F.tgt[e];
                int rho = A->comp_.at(A->key(
                    A->invm[so.xeta[k2].second],
                    A->comp_.at(A->key(fb.sq.pA.mmap[e], so.xeta[k].second))));
                so.smor[e] = lift(so.xeta[k].first, so.xeta[k2].first, rho);
                require(so.smor[e] >= 0, "dependent product: lift vanished");
            }
            raw.push_back(std::move(so));
        }
        check_capacity(raw.size() <= 4096, "dependent product: section cap exceeded");
    }

    // modification o -> o2 over beta: unique if the forced lifts all exist
    auto modification = [&](const SectionObj& o, const SectionObj& o2, int beta,
                            std::vector<int>* mu) {
        const Fiber& fb = fibers[o.b];
        const Fiber& fb2 = fibers[o2.b];
        if (mu) mu->assign(fb.sq.objs.size(), -1);
        for (std::size_t k = 0; k < fb.sq.objs.size(); ++k) {
            int a = fb.sq.objs[k][0], gamma = fb.sq.objs[k][2];
            int k2 = fb2.idx.at({a, B->comp_.at(B->key(beta, gamma))});
            int rho = A->comp_.at(
                A->key(A->invm[o2.xeta[k2].second], o.xeta[k].second));
            int xi = lift(o.xeta[k].first, o2.xeta[k2].first, rho);
            if (xi < 0) return false;
            if (mu) (*mu)[k] = xi;
        }
        return true;
    };
    auto connected = [&](const SectionObj& o, const SectionObj& o2) {
        for (int beta : B->hom[o.b][o2.b])
            if (modification(o, o2, beta, nullptr)) return true;
        return false;
    };

    // skeletalize: one representative per isomorphism class
    std::vector<SectionObj> reps;
    for (const auto& so : raw) {
        bool fresh = true;
        for (const auto& r : reps)
            if (connected(r, so)) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(so);
    }

    int p = static_cast<int>(reps.size());
    std::vector<int> msrc, mtgt, mbeta;
    std::vector<std::vector<int>> mmu;
    std::map<std::array<int, 3>, int> mor_id;  // (src, tgt, beta)
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int beta : B->hom[reps[i].b][reps[j].b]) {
                std::vector<int> mu;
                if (!modification(reps[i], reps[j], beta, &mu)) continue;
                mor_id[{i, j, beta}] = static_cast<int>(msrc.size());
                msrc.push_back(i);
                mtgt.push_back(j);
                mbeta.push_back(beta);
                mmu.push_back(std::move(mu));
            }
    int M = static_cast<int>(msrc.size());
    std::vector<int> idm(p), invm(M);
    for (int i = 0; i < p; ++i) idm[i] = mor_id.at({i, i, B->idm[reps[i].b]});
    for (int e = 0; e < M; ++e)
        invm[e] = mor_id.at({mtgt[e], msrc[e], B->invm[mbeta[e]]});
    std::unordered_map<std::uint64_t, int> comp;
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (msrc[g] != mtgt[f]) continue;
            int beta = B->comp_.at(B->key(mbeta[g], mbeta[f]));
            comp[static_cast<std::uint64_t>(g) * M + f] =
                mor_id.at({msrc[f], mtgt[g], beta});
        }
    GroupoidPtr Y = make_groupoid(p, msrc, mtgt, std::move(idm), std::move(invm),
                                  std::move(comp));
    std::vector<int> yomap(p);
    for (int i = 0; i < p; ++i) yomap[i] = reps[i].b;
    GroupoidMap m_prime = make_functor(Y, B, std::move(yomap), mbeta);

    auto sq2 = iso_comma_pullback(n, m_prime);
    const FiniteGroupoid& P = *sq2.apex;
    std::vector<int> eomap(P.nobj), emmap(P.nmor());
    for (int i = 0; i < P.nobj; ++i) {
        int a = sq2.objs[i][0], y = sq2.objs[i][1], gamma = sq2.objs[i][2];
        eomap[i] = reps[y].xeta[fibers[reps[y].b].idx.at({a, gamma})].first;
    }
    for (int e = 0; e < P.nmor(); ++e) {
        int alpha = sq2.pA.mmap[e], ymor = sq2.pB.mmap[e];
        int i = P.src[e], j = P.tgt[e];
        int y = sq2.objs[i][1], y2 = sq2.objs[j][1];
        const Fiber& fb2 = fibers[reps[y2].b];
        int k = fibers[reps[y].b].idx.at({sq2.objs[i][0], sq2.objs[i][2]});
        int kmid = fb2.idx.at(
            {sq2.objs[i][0], B->comp_.at(B->key(mbeta[ymor], sq2.objs[i][2]))});
        int k2 = fb2.idx.at({sq2.objs[j][0], sq2.objs[j][2]});
        int tilde = -1;
        for (int fe : fb2.sq.apex->hom[kmid][k2])
            if (fb2.sq.pA.mmap[fe] == alpha) tilde = fe;
        require(tilde >= 0, "dependent product: fiber transport vanished");
        emmap[e] = X->comp_.at(X->key(reps[y2].smor[tilde], mmu[ymor][k]));
    }
    GroupoidMap eps = make_functor(sq2.apex, X, std::move(eomap), std::move(emmap));

    return GroupoidDistributivity{n,        m,       Y,  std::move(m_prime),
                                  sq2.apex, sq2.pB,  sq2.pA, std::move(eps)};
}

struct GroupoidBispanOps {
    GroupoidMap merge(GenType t, const GroupoidMap& a, const GroupoidMap& b) const {
        return t == GenType::R ? compose_functors(a, b) : compose_functors(b, a);
    }
    std::pair<GroupoidMap, GroupoidMap> past_r(const GroupoidMap& q,
                                               const GroupoidMap& f) const {
        auto sq = iso_comma_pullback(q, f);
        return {sq.pA, sq.pB};
    }
    std::array<GroupoidMap, 3> dist(const GroupoidMap& n, const GroupoidMap& m) const {
        auto d = groupoid_dependent_product(n, m);
        return {d.eps, d.n_prime, d.m_prime};
    }
};

inline GroupoidBispan compose_bispans(const GroupoidBispan& u, const GroupoidBispan& v,
                                      bool rightmost = false) {
    require(u.spec == v.spec, "compose_bispans: specs differ");
    require(u.right() == v.left(), "compose_bispans: middle objects differ");
    std::vector<BispanGen<GroupoidMap>> w = {{GenType::R, u.l}, {GenType::N, u.n},
                                             {GenType::T, u.m}, {GenType::R, v.l},
                                             {GenType::N, v.n}, {GenType::T, v.m}};
    normalize_bispan_word(w, GroupoidBispanOps{}, rightmost);
    std::size_t i = 0;
    GroupoidMap l = (i < w.size() && w[i].t == GenType::R)
                        ? w[i++].f
                        : identity_functor(u.left());
    GroupoidMap n =
        (i < w.size() && w[i].t == GenType::N) ? w[i++].f : identity_functor(l.src);
    GroupoidMap m =
        (i < w.size() && w[i].t == GenType::T) ? w[i++].f : identity_functor(n.dst);
    require(i == w.size() && m.dst == v.right(), "compose_bispans: bad normal form");
    if (!in_class(n, u.spec.norms) || !in_class(m, u.spec.sums))
        throw verify_error("compose_bispans: composite legs left their classes");
    return make_groupoid_bispan(u.spec, std::move(l), std::move(n), std::move(m));
}

/// Replaces both apices by skeletons; the result is isomorphic to the input
/// through the inclusion equivalences and keeps the original endpoints.
inline GroupoidBispan skeletal_bispan(const GroupoidBispan& u) {
    auto sx = skeleton_groupoid(u.n.src);
    auto sy = skeleton_groupoid(u.n.dst);
    return GroupoidBispan{u.spec, compose_functors(u.l, sx.incl),
                          compose_functors(sy.retr, compose_functors(u.n, sx.incl)),
                          compose_functors(u.m, sy.incl)};
}

/// Exhaustive search for an apex-pair equivalence commuting with all three
/// legs up to natural isomorphism, on skeletalized apices.  Endpoints must
/// agree on the nose.
inline bool bispan_iso(const GroupoidBispan& u0, const GroupoidBispan& v0) {
    if (!(u0.spec == v0.spec)) return false;
    if (u0.left() != v0.left() || u0.right() != v0.right()) return false;
    GroupoidBispan u = skeletal_bispan(u0);
    GroupoidBispan v = skeletal_bispan(v0);
    for (const auto& psi : all_functors(u.n.dst, v.n.dst)) {
        if (!is_equivalence(psi)) continue;
        if (!naturally_isomorphic(compose_functors(v.m, psi), u.m)) continue;
        for (const auto& phi : all_functors(u.n.src, v.n.src)) {
            if (!is_equivalence(phi)) continue;
            if (!naturally_isomorphic(compose_functors(v.l, phi), u.l)) continue;
            if (naturally_isomorphic(compose_functors(v.n, phi),
                                     compose_functors(psi, u.n)))
                return true;
        }
    }
    return false;
}

// --- triple-spec certification ---

/// Samples the defining conditions of a bispan triple: both leg classes are
/// stable under pullback, dependent products of sum-class maps along
/// norm-class maps exist with sum-class projection, and the norm class is
/// closed under binary coproducts.
inline CheckResult verify_bispan_spec(const BispanSpec& spec, const GroupPtr& G,
                                      int cap) {
    if (spec.world == WorldTag::gset) {
        auto gs = enumerate_gsets(G, cap);
        std::vector<GSetMap> maps;
        for (const auto& Xc : gs)
            for (const auto& Yc : gs)
                for (const auto& f : all_maps(Xc, Yc)) maps.push_back(f);
        for (const auto& f : maps)
            for (const auto& g : maps) {
                if (!(f.dst == g.dst)) continue;
                auto sq = pullback(f, g);
                for (MapClass c : {spec.norms, spec.sums}) {
                    if (in_class(f, c) && !in_class(sq.p2, c))
                        return {false, "leg class not stable under pullback"};
                    if (in_class(g, c) && !in_class(sq.p1, c))
                        return {false, "leg class not stable under pullback"};
                }
            }
        int products = 0;
        for (const auto& m : maps) {
            if (!in_class(m, spec.sums)) continue;
            for (const auto& nn : maps) {
                if (!(nn.src == m.dst) || !in_class(nn, spec.norms)) continue;
                auto d = dependent_product(nn, m);
                ++products;
                if (!in_class(d.m_prime, spec.sums))
                    return {false, "dependent product left the sum class"};
            }
        }
        int unions = 0;
        for (const auto& f : maps) {
            if (!in_class(f, spec.norms)) continue;
            for (const auto& g : maps) {
                if (!in_class(g, spec.norms)) continue;
                if (!in_class(disjoint_union_map(f, g), spec.norms))
                    return {false, "norm class not closed under coproducts"};
                ++unions;
            }
        }
        return {true, std::to_string(maps.size()) + " maps, " +
                          std::to_string(products) + " dependent products, " +
                          std::to_string(unions) + " coproducts checked"};
    }

    // groupoid world: a small fixed battery
    std::vector<GroupoidPtr> objs = {point_groupoid(), discrete_groupoid(2),
                                     one_object_groupoid(cyclic_group(2))};
    std::vector<GroupoidMap> funs;
    for (const auto& Ag : objs)
        for (const auto& Bg : objs)
            for (const auto& F : all_functors(Ag, Bg)) funs.push_back(F);
    for (const auto& f : funs)
        for (const auto& g : funs) {
            if (f.dst != g.dst) continue;
            auto sq = iso_comma_pullback(f, g);
            for (MapClass c : {spec.norms, spec.sums}) {
                if (in_class(f, c) && !in_class(sq.pB, c))
                    return {false, "leg class not stable under pullback"};
                if (in_class(g, c) && !in_class(sq.pA, c))
                    return {false, "leg class not stable under pullback"};
            }
        }
    int products = 0;
    for (const auto& m : funs) {
        if (!in_class(m, spec.sums) || !is_faithful(m)) continue;
        for (const auto& nn : funs) {
            if (nn.src != m.dst || !in_class(nn, spec.norms)) continue;
            auto d = groupoid_dependent_product(nn, m);
            ++products;
            if (!in_class(d.m_prime, spec.sums))
                return {false, "dependent product left the sum class"};
        }
    }
    for (const auto& f : funs) {
        if (!in_class(f, spec.norms)) continue;
        for (const auto& g : funs) {
            if (!in_class(g, spec.norms)) continue;
            if (!in_class(disjoint_union_functor(f, g), spec.norms))
                return {false, "norm class not closed under coproducts"};
        }
    }
    return {true, std::to_string(funs.size()) + " functors, " +
                      std::to_string(products) + " dependent products checked"};
}

// --- functoriality of a Tambara-functor oracle ---

/// Oracle contract: battery(X) lists deterministic sample values at X;
/// act_r(f, v) restricts v along f, act_n / act_t push forward; equal
/// compares values at a level; combine(A, B, a, b) produces the value at
/// disjoint_union(A, B) with the given summand data.
template <class Oracle>
typename Oracle::Value apply_bispan(const Oracle& F, const GSetBispan& u,
                                    const typename Oracle::Value& x) {
    return F.act_t(u.m, F.act_n(u.n, F.act_r(u.l, x)));
}

/// Exhaustively compares F on composites against the generator-wise action
/// over all composable bispan pairs with orbit endpoints and apices within
/// cap, then checks that values on binary coproducts are determined by their
/// summand restrictions.  Reports the first violation.
template <class Oracle>
CheckResult check_functoriality(const Oracle& F, const BispanSpec& spec,
                                const GroupPtr& G, int cap) {
    require(spec.world == WorldTag::gset, "check_functoriality: finite G-set world only");
    std::vector<GSet> endpoints;
    for (std::size_t c = 0; c < G->subgroup_classes().size(); ++c)
        endpoints.push_back(orbit_gset(G, static_cast<int>(c)));
    long pairs = 0;
    for (const auto& A : endpoints)
        for (const auto& Bv : endpoints) {
            auto us = bispan_enumerate(A, Bv, spec, cap);
            for (const auto& C : endpoints) {
                auto vs = bispan_enumerate(Bv, C, spec, cap);
                for (const auto& u : us)
                    for (const auto& v : vs) {
                        auto w = compose_bispans(u, v);
                        ++pairs;
                        for (const auto& x : F.battery(A)) {
                            auto lhs = apply_bispan(F, w, x);
                            auto rhs = apply_bispan(F, v, apply_bispan(F, u, x));
                            if (!F.equal(C, lhs, rhs))
                                return {false,
                                        "composite disagrees with generator-wise "
                                        "action on a pair with apices " +
                                            std::to_string(u.n.src.n) + "," +
                                            std::to_string(u.m.src.n) + " then " +
                                            std::to_string(v.n.src.n) + "," +
                                            std::to_string(v.m.src.n)};
                        }
                    }
            }
        }
    for (const auto& A : endpoints)
        for (const auto& Bv : endpoints) {
            GSet U = disjoint_union(A, Bv);
            std::vector<int> ia(A.n), ib(Bv.n);
            std::iota(ia.begin(), ia.end(), 0);
            std::iota(ib.begin(), ib.end(), A.n);
            GSetMap inclA = make_map(A, U, std::move(ia));
            GSetMap inclB = make_map(Bv, U, std::move(ib));
            for (const auto& x : F.battery(U)) {
                auto back = F.combine(A, Bv, F.act_r(inclA, x), F.act_r(inclB, x));
                if (!F.equal(U, back, x))
                    return {false, "coproduct value not determined by summands"};
            }
            for (const auto& a : F.battery(A))
                for (const auto& b : F.battery(Bv)) {
                    auto c = F.combine(A, Bv, a, b);
                    if (!F.equal(A, F.act_r(inclA, c), a) ||
                        !F.equal(Bv, F.act_r(inclB, c), b))
                        return {false, "coproduct restrictions lost summand data"};
                }
        }
    return {true, std::to_string(pairs) + " composable pairs checked"};
}

}  // namespace eqalg
