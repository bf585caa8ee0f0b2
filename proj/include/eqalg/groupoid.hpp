#pragma once

#include <array>
#include <unordered_map>

#include "eqalg/group.hpp"
#include "eqalg/gset.hpp"

namespace eqalg {

/// Finite groupoid with explicit object and morphism tables. Morphisms carry
/// global ids; composition compose(g, f) means "g after f" and is defined
/// exactly when tgt(f) == src(g). Instances are immutable and shared.
struct FiniteGroupoid {
    int nobj = 0;
    std::vector<int> src, tgt;  // per morphism
    std::vector<int> idm;       // idm[object] = identity morphism
    std::vector<int> invm;      // invm[morphism]
    std::vector<std::vector<std::vector<int>>> hom;  // hom[a][b], ascending ids
    std::unordered_map<std::uint64_t, int> comp_;

    int nmor() const { return static_cast<int>(src.size()); }

    int compose(int g, int f) const {
        auto it = comp_.find(key(g, f));
        require(it != comp_.end(), "groupoid: morphisms not composable");
        return it->second;
    }

    std::uint64_t key(int g, int f) const {
        return static_cast<std::uint64_t>(g) * static_cast<std::uint64_t>(nmor()) +
               static_cast<std::uint64_t>(f);
    }
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr make_groupoid(int nobj, std::vector<int> src, std::vector<int> tgt,
                                 std::vector<int> idm, std::vector<int> invm,
                                 std::unordered_map<std::uint64_t, int> comp) {
    auto g = std::make_shared<FiniteGroupoid>();
    check_capacity(nobj <= kMaxGroupoidObjects, "groupoid: object cap exceeded");
    check_capacity(src.size() <= kMaxGroupoidMorphisms, "groupoid: morphism cap exceeded");
    g->nobj = nobj;
    g->src = std::move(src);
    g->tgt = std::move(tgt);
    g->idm = std::move(idm);
    g->invm = std::move(invm);
    g->comp_ = std::move(comp);
    int M = g->nmor();
    require(static_cast<int>(g->tgt.size()) == M && static_cast<int>(g->invm.size()) == M,
            "groupoid: ragged morphism tables");
    require(static_cast<int>(g->idm.size()) == nobj, "groupoid: identity table size");
    for (int m = 0; m < M; ++m) {
        require(0 <= g->src[m] && g->src[m] < nobj, "groupoid: src out of range");
        require(0 <= g->tgt[m] && g->tgt[m] < nobj, "groupoid: tgt out of range");
        require(0 <= g->invm[m] && g->invm[m] < M, "groupoid: inv out of range");
    }
    g->hom.assign(nobj, std::vector<std::vector<int>>(nobj));
    for (int m = 0; m < M; ++m) g->hom[g->src[m]][g->tgt[m]].push_back(m);
    for (int a = 0; a < nobj; ++a) {
        int i = g->idm[a];
        require(0 <= i && i < M, "groupoid: identity out of range");
        require(g->src[i] == a && g->tgt[i] == a, "groupoid: identity endpoints");
    }
    // composition total on composable pairs, with unit/inverse/associativity laws
    for (int f = 0; f < M; ++f) {
        for (int b = 0; b < nobj; ++b)
            for (int h : g->hom[g->tgt[f]][b]) {
                auto it = g->comp_.find(g->key(h, f));
                require(it != g->comp_.end(), "groupoid: missing composite");
                int c = it->second;
                require(g->src[c] == g->src[f] && g->tgt[c] == g->tgt[h],
                        "groupoid: composite endpoints");
            }
        require(g->comp_.at(g->key(g->idm[g->tgt[f]], f)) == f, "groupoid: left unit");
        require(g->comp_.at(g->key(f, g->idm[g->src[f]])) == f, "groupoid: right unit");
        require(g->comp_.at(g->key(g->invm[f], f)) == g->idm[g->src[f]],
                "groupoid: inverse law");
        require(g->comp_.at(g->key(f, g->invm[f])) == g->idm[g->tgt[f]],
                "groupoid: inverse law");
    }
    for (int f = 0; f < M; ++f)
        for (int b = 0; b < nobj; ++b)
            for (int h : g->hom[g->tgt[f]][b]) {
                int hf = g->comp_.at(g->key(h, f));
                for (int c2 = 0; c2 < nobj; ++c2)
                    for (int k : g->hom[b][c2]) {
                        int lhs = g->comp_.at(g->key(k, hf));
                        int rhs = g->comp_.at(g->key(g->comp_.at(g->key(k, h)), f));
                        require(lhs == rhs, "groupoid: not associative");
                    }
            }
    return g;
}

// --- builders ---

inline GroupoidPtr discrete_groupoid(int n) {
    std::vector<int> src(n), tgt(n), idm(n), invm(n);
    std::unordered_map<std::uint64_t, int> comp;
    for (int i = 0; i < n; ++i) {
        src[i] = tgt[i] = i;
        idm[i] = invm[i] = i;
        comp[static_cast<std::uint64_t>(i) * n + i] = i;
    }
    return make_groupoid(n, std::move(src), std::move(tgt), std::move(idm),
                         std::move(invm), std::move(comp));
}

inline GroupoidPtr point_groupoid() { return discrete_groupoid(1); }

/// One-object groupoid on a group; morphism ids are the group element indices.
inline GroupoidPtr one_object_groupoid(const GroupPtr& G) {
    int n = G->n;
    std::vector<int> src(n, 0), tgt(n, 0), idm{G->e}, invm(n);
    std::unordered_map<std::uint64_t, int> comp;
    for (int a = 0; a < n; ++a) {
        invm[a] = G->inv[a];
        for (int b = 0; b < n; ++b)
            comp[static_cast<std::uint64_t>(a) * n + b] = G->mul[a][b];
    }
    return make_groupoid(1, std::move(src), std::move(tgt), std::move(idm),
                         std::move(invm), std::move(comp));
}

/// n objects with exactly one morphism between each ordered pair.
inline GroupoidPtr contractible_groupoid(int n) {
    int M = n * n;  // morphism i*n+j : i -> j
    std::vector<int> src(M), tgt(M), idm(n), invm(M);
    std::unordered_map<std::uint64_t, int> comp;
    for (int i = 0; i < n; ++i) {
        idm[i] = i * n + i;
        for (int j = 0; j < n; ++j) {
            src[i * n + j] = i;
            tgt[i * n + j] = j;
            invm[i * n + j] = j * n + i;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                comp[static_cast<std::uint64_t>(j * n + k) * M + (i * n + j)] = i * n + k;
    return make_groupoid(n, std::move(src), std::move(tgt), std::move(idm),
                         std::move(invm), std::move(comp));
}

inline GroupoidPtr disjoint_union_groupoid(const FiniteGroupoid& A,
                                           const FiniteGroupoid& B) {
    int nobj = A.nobj + B.nobj;
    int MA = A.nmor(), M = MA + B.nmor();
    std::vector<int> src, tgt, idm, invm;
    for (int m = 0; m < MA; ++m) {
        src.push_back(A.src[m]);
        tgt.push_back(A.tgt[m]);
        invm.push_back(A.invm[m]);
    }
    for (int m = 0; m < B.nmor(); ++m) {
        src.push_back(A.nobj + B.src[m]);
        tgt.push_back(A.nobj + B.tgt[m]);
        invm.push_back(MA + B.invm[m]);
    }
    for (int a = 0; a < A.nobj; ++a) idm.push_back(A.idm[a]);
    for (int b = 0; b < B.nobj; ++b) idm.push_back(MA + B.idm[b]);
    std::unordered_map<std::uint64_t, int> comp;
    for (const auto& kv : A.comp_) {
        int g = static_cast<int>(kv.first / A.nmor());
        int f = static_cast<int>(kv.first % A.nmor());
        comp[static_cast<std::uint64_t>(g) * M + f] = kv.second;
    }
    for (const auto& kv : B.comp_) {
        int g = static_cast<int>(kv.first / B.nmor()) + MA;
        int f = static_cast<int>(kv.first % B.nmor()) + MA;
        comp[static_cast<std::uint64_t>(g) * M + f] = kv.second + MA;
    }
    return make_groupoid(nobj, std::move(src), std::move(tgt), std::move(idm),
                         std::move(invm), std::move(comp));
}

struct GroupoidMap {
    GroupoidPtr src, dst;
    std::vector<int> omap, mmap;

    bool operator==(const GroupoidMap& o) const {
        return src == o.src && dst == o.dst && omap == o.omap && mmap == o.mmap;
    }
};

inline GroupoidMap make_functor(GroupoidPtr A, GroupoidPtr B, std::vector<int> omap,
                                std::vector<int> mmap) {
    require(static_cast<int>(omap.size()) == A->nobj, "functor: object map size");
    require(static_cast<int>(mmap.size()) == A->nmor(), "functor: morphism map size");
    for (int a = 0; a < A->nobj; ++a)
        require(0 <= omap[a] && omap[a] < B->nobj, "functor: object out of range");
    for (int m = 0; m < A->nmor(); ++m) {
        require(0 <= mmap[m] && mmap[m] < B->nmor(), "functor: morphism out of range");
        require(B->src[mmap[m]] == omap[A->src[m]] && B->tgt[mmap[m]] == omap[A->tgt[m]],
                "functor: endpoints not preserved");
    }
    for (int a = 0; a < A->nobj; ++a)
        require(mmap[A->idm[a]] == B->idm[omap[a]], "functor: identities not preserved");
    for (int f = 0; f < A->nmor(); ++f)
        for (int b = 0; b < A->nobj; ++b)
            for (int h : A->hom[A->tgt[f]][b])
                require(mmap[A->comp_.at(A->key(h, f))] ==
                            B->comp_.at(B->key(mmap[h], mmap[f])),
                        "functor: composition not preserved");
    return GroupoidMap{std::move(A), std::move(B), std::move(omap), std::move(mmap)};
}

inline GroupoidMap identity_functor(const GroupoidPtr& A) {
    std::vector<int> o(A->nobj), m(A->nmor());
    std::iota(o.begin(), o.end(), 0);
    std::iota(m.begin(), m.end(), 0);
    return GroupoidMap{A, A, std::move(o), std::move(m)};
}

inline GroupoidMap compose_functors(const GroupoidMap& g, const GroupoidMap& f) {
    require(f.dst == g.src, "compose_functors: not composable");
    std::vector<int> o(f.src->nobj), m(f.src->nmor());
    for (int a = 0; a < f.src->nobj; ++a) o[a] = g.omap[f.omap[a]];
    for (int x = 0; x < f.src->nmor(); ++x) m[x] = g.mmap[f.mmap[x]];
    return GroupoidMap{f.src, g.dst, std::move(o), std::move(m)};
}

/// F ⊔ G between the disjoint unions, second summand shifted.
inline GroupoidMap disjoint_union_functor(const GroupoidMap& F, const GroupoidMap& G) {
    auto src = disjoint_union_groupoid(*F.src, *G.src);
    auto dst = disjoint_union_groupoid(*F.dst, *G.dst);
    std::vector<int> omap(F.omap), mmap(F.mmap);
    for (int b : G.omap) omap.push_back(F.dst->nobj + b);
    for (int e : G.mmap) mmap.push_back(F.dst->nmor() + e);
    return make_functor(std::move(src), std::move(dst), std::move(omap), std::move(mmap));
}

/// Action groupoid of a G-set, with its faithful projection to BG.
struct ActionGroupoid {
    GroupoidPtr gpd;
    GroupoidMap to_bg;
    GroupoidPtr bg;
};

inline ActionGroupoid action_groupoid(const GSet& X) {
    const GroupPtr& G = X.G;
    int n = X.n, ng = G->n;
    int M = ng * n;  // morphism g*n+x : x -> g.x
    std::vector<int> src(M), tgt(M), idm(n), invm(M), mmap(M);
    std::unordered_map<std::uint64_t, int> comp;
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < n; ++x) {
            int m = g * n + x;
            src[m] = x;
            tgt[m] = X.act[g][x];
            invm[m] = G->inv[g] * n + X.act[g][x];
            mmap[m] = g;
        }
    for (int x = 0; x < n; ++x) idm[x] = G->e * n + x;
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < n; ++x)
            for (int h = 0; h < ng; ++h) {
                // (h, g.x) after (g, x) = (hg, x)
                int f = g * n + x;
                int s = h * n + X.act[g][x];
                comp[static_cast<std::uint64_t>(s) * M + f] = G->mul[h][g] * n + x;
            }
    ActionGroupoid out;
    out.gpd = make_groupoid(n, std::move(src), std::move(tgt), std::move(idm),
                            std::move(invm), std::move(comp));
    out.bg = one_object_groupoid(G);
    out.to_bg = make_functor(out.gpd, out.bg, std::vector<int>(n, 0), std::move(mmap));
    return out;
}

// --- predicates ---

inline bool is_faithful(const GroupoidMap& F) {
    const auto& A = *F.src;
    for (int a = 0; a < A.nobj; ++a)
        for (int b = 0; b < A.nobj; ++b) {
            std::set<int> seen;
            for (int m : A.hom[a][b])
                if (!seen.insert(F.mmap[m]).second) return false;
        }
    return true;
}

inline bool is_full(const GroupoidMap& F) {
    const auto& A = *F.src;
    const auto& B = *F.dst;
    for (int a = 0; a < A.nobj; ++a)
        for (int b = 0; b < A.nobj; ++b) {
            std::set<int> image;
            for (int m : A.hom[a][b]) image.insert(F.mmap[m]);
            if (image.size() < B.hom[F.omap[a]][F.omap[b]].size()) return false;
        }
    return true;
}

inline bool is_fully_faithful(const GroupoidMap& F) {
    const auto& A = *F.src;
    const auto& B = *F.dst;
    for (int a = 0; a < A.nobj; ++a)
        for (int b = 0; b < A.nobj; ++b) {
            std::set<int> image;
            for (int m : A.hom[a][b]) image.insert(F.mmap[m]);
            if (image.size() != A.hom[a][b].size() ||
                image.size() != B.hom[F.omap[a]][F.omap[b]].size())
                return false;
        }
    return true;
}

// --- components and skeleton ---

struct Component {
    std::vector<int> objects;  // sorted
    int base = 0;              // least object
    std::vector<int> tree;     // tree[obj] = morphism obj -> base (id at base)
    GroupPtr skeleton;         // Aut(base) as a group
    std::vector<int> loop_mor;  // group element -> morphism id
    std::map<int, int> loop_idx;  // morphism id -> group element
};

inline int component_of(const FiniteGroupoid& A, std::vector<int>& comp_id) {
    comp_id.assign(A.nobj, -1);
    int c = 0;
    for (int a = 0; a < A.nobj; ++a) {
        if (comp_id[a] >= 0) continue;
        comp_id[a] = c;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int m = 0; m < A.nmor(); ++m) {
                int x = A.src[m], y = A.tgt[m];
                if (comp_id[x] == c && comp_id[y] < 0) { comp_id[y] = c; grew = true; }
                if (comp_id[y] == c && comp_id[x] < 0) { comp_id[x] = c; grew = true; }
            }
        }
        ++c;
    }
    return c;
}

inline std::vector<Component> components(const FiniteGroupoid& A) {
    std::vector<int> comp_id;
    int nc = component_of(A, comp_id);
    std::vector<Component> out(nc);
    for (int a = 0; a < A.nobj; ++a) out[comp_id[a]].objects.push_back(a);
    for (auto& c : out) {
        c.base = c.objects.front();
        c.tree.assign(A.nobj, -1);
        c.tree[c.base] = A.idm[c.base];
        bool grew = true;
        while (grew) {
            grew = false;
            for (int m = 0; m < A.nmor(); ++m) {
                int x = A.src[m], y = A.tgt[m];
                if (c.tree[x] < 0 && comp_id[x] == comp_id[c.base] && c.tree[y] >= 0) {
                    c.tree[x] = A.comp_.at(A.key(c.tree[y], m));  // (y->base) after (x->y)
                    grew = true;
                }
            }
        }
        const auto& loops = A.hom[c.base][c.base];
        c.loop_mor = loops;
        for (std::size_t i = 0; i < loops.size(); ++i)
            c.loop_idx[loops[i]] = static_cast<int>(i);
        int k = static_cast<int>(loops.size());
        std::vector<std::vector<int>> mul(k, std::vector<int>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                mul[i][j] = c.loop_idx.at(A.comp_.at(A.key(loops[i], loops[j])));
        c.skeleton = make_group("Aut", std::move(mul));
    }
    return out;
}

inline bool is_essentially_surjective(const GroupoidMap& F) {
    std::vector<int> comp_id;
    int nc = component_of(*F.dst, comp_id);
    std::vector<char> hit(nc, 0);
    for (int a = 0; a < F.src->nobj; ++a) hit[comp_id[F.omap[a]]] = 1;
    for (int c = 0; c < nc; ++c)
        if (!hit[c]) return false;
    return true;
}

inline bool is_equivalence(const GroupoidMap& F) {
    return is_essentially_surjective(F) && is_fully_faithful(F);
}

/// Full on each connected component of the source (fold maps qualify).
inline bool is_componentwise_full(const GroupoidMap& F) {
    std::vector<int> sc;
    component_of(*F.src, sc);
    const auto& A = *F.src;
    const auto& B = *F.dst;
    for (int a = 0; a < A.nobj; ++a)
        for (int b = 0; b < A.nobj; ++b) {
            if (sc[a] != sc[b]) continue;
            std::set<int> image;
            for (int m : A.hom[a][b]) image.insert(F.mmap[m]);
            if (image.size() < B.hom[F.omap[a]][F.omap[b]].size()) return false;
        }
    return true;
}

/// Membership in the left class of the (full-on-components, faithful)
/// factorization: bijective on components and full. Fold maps are excluded
/// by the bijectivity requirement.
inline bool is_component_full(const GroupoidMap& F) {
    std::vector<int> sc, dc;
    int ns = component_of(*F.src, sc);
    int nd = component_of(*F.dst, dc);
    if (ns != nd) return false;
    std::vector<int> img(ns, -1);
    std::vector<char> used(nd, 0);
    for (int a = 0; a < F.src->nobj; ++a) {
        int s = sc[a], d = dc[F.omap[a]];
        if (img[s] < 0) {
            if (used[d]) return false;  // two source components fold together
            img[s] = d;
            used[d] = 1;
        } else if (img[s] != d) {
            return false;
        }
    }
    for (int c = 0; c < nd; ++c)
        if (!used[c]) return false;
    return is_full(F);
}

// --- iso-comma pullback ---

struct IsoCommaSquare {
    GroupoidMap f, g;  // f: A -> C, g: B -> C
    GroupoidPtr apex;
    GroupoidMap pA, pB;
    std::vector<int> witness;  // per apex object: the C-morphism f(a) -> g(b)
    // bookkeeping: apex object i is the triple (a, b, witness[i])
    std::vector<std::array<int, 3>> objs;
    std::vector<std::pair<int, int>> mors;  // apex morphism -> (alpha, beta)
};

/// Iso-comma object of f: A -> C and g: B -> C. Objects are triples
/// (a, b, gamma: f(a) -> g(b)); morphisms are pairs (alpha, beta) with
/// gamma' . f(alpha) = g(beta) . gamma.
inline IsoCommaSquare iso_comma_pullback(const GroupoidMap& f, const GroupoidMap& g) {
    require(f.dst == g.dst, "iso_comma_pullback: targets differ");
    const auto& A = *f.src;
    const auto& B = *g.src;
    const auto& C = *f.dst;
    std::vector<std::array<int, 3>> objs;
    std::map<std::array<int, 3>, int> oidx;
    for (int a = 0; a < A.nobj; ++a)
        for (int b = 0; b < B.nobj; ++b)
            for (int gm : C.hom[f.omap[a]][g.omap[b]]) {
                oidx[{a, b, gm}] = static_cast<int>(objs.size());
                objs.push_back({a, b, gm});
            }
    check_capacity(objs.size() <= static_cast<std::size_t>(kMaxGroupoidObjects),
                   "iso_comma_pullback: object cap exceeded");
    std::vector<std::pair<int, int>> mors;
    std::vector<int> msrc, mtgt;
    std::map<std::pair<int, std::pair<int, int>>, int> midx;  // (srcobj,(alpha,beta))
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = 0; j < objs.size(); ++j) {
            auto [a, b, gm] = objs[i];
            auto [a2, b2, gm2] = objs[j];
            for (int al : A.hom[a][a2])
                for (int be : B.hom[b][b2]) {
                    int lhs = C.comp_.at(C.key(gm2, f.mmap[al]));
                    int rhs = C.comp_.at(C.key(g.mmap[be], gm));
                    if (lhs != rhs) continue;
                    midx[{static_cast<int>(i), {al, be}}] =
                        static_cast<int>(mors.size());
                    mors.emplace_back(al, be);
                    msrc.push_back(static_cast<int>(i));
                    mtgt.push_back(static_cast<int>(j));
                }
        }
    check_capacity(mors.size() <= static_cast<std::size_t>(kMaxGroupoidMorphisms),
                   "iso_comma_pullback: morphism cap exceeded");
    int M = static_cast<int>(mors.size());
    std::vector<int> idm(objs.size()), invm(M);
    for (std::size_t i = 0; i < objs.size(); ++i)
        idm[i] = midx.at({static_cast<int>(i),
                          {A.idm[objs[i][0]], B.idm[objs[i][1]]}});
    for (int m = 0; m < M; ++m)
        invm[m] = midx.at({mtgt[m], {A.invm[mors[m].first], B.invm[mors[m].second]}});
    std::unordered_map<std::uint64_t, int> comp;
    for (int fm = 0; fm < M; ++fm)
        for (int gm = 0; gm < M; ++gm) {
            if (mtgt[fm] != msrc[gm]) continue;
            int al = A.comp_.at(A.key(mors[gm].first, mors[fm].first));
            int be = B.comp_.at(B.key(mors[gm].second, mors[fm].second));
            comp[static_cast<std::uint64_t>(gm) * M + fm] = midx.at({msrc[fm], {al, be}});
        }
    IsoCommaSquare sq;
    sq.f = f;
    sq.g = g;
    sq.apex = make_groupoid(static_cast<int>(objs.size()), msrc, mtgt, idm, invm,
                            std::move(comp));
    std::vector<int> oa(objs.size()), ob(objs.size()), wit(objs.size());
    std::vector<int> ma(M), mb(M);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        oa[i] = objs[i][0];
        ob[i] = objs[i][1];
        wit[i] = objs[i][2];
    }
    for (int m = 0; m < M; ++m) {
        ma[m] = mors[m].first;
        mb[m] = mors[m].second;
    }
    sq.pA = make_functor(sq.apex, f.src, std::move(oa), std::move(ma));
    sq.pB = make_functor(sq.apex, g.src, std::move(ob), std::move(mb));
    sq.witness = std::move(wit);
    sq.objs = std::move(objs);
    sq.mors = std::move(mors);
    return sq;
}

// --- functor and natural transformation enumeration ---

/// All strict functors A -> B, enumerated per source component from a choice
/// of base image, a homomorphism of automorphism groups, and transport
/// morphisms. Deterministic order; capped.
inline std::vector<GroupoidMap> all_functors(const GroupoidPtr& A, const GroupoidPtr& B,
                                             std::size_t cap = 200000) {
    auto comps = components(*A);
    // per component, the list of (omap fragment, mmap fragment) choices
    struct Frag {
        std::vector<std::pair<int, int>> obj;  // (A object, B object)
        std::vector<std::pair<int, int>> mor;  // (A morphism, B morphism)
    };
    std::vector<std::vector<Frag>> per_comp;
    for (const auto& c : comps) {
        std::vector<Frag> frags;
        const auto& P = *c.skeleton;
        for (int b0 = 0; b0 < B->nobj; ++b0) {
            const auto& loops = B->hom[b0][b0];
            int k = static_cast<int>(loops.size());
            std::map<int, int> lidx;
            for (int i = 0; i < k; ++i) lidx[loops[i]] = i;
            std::vector<std::vector<int>> mul(k, std::vector<int>(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    mul[i][j] = lidx.at(B->comp_.at(B->key(loops[i], loops[j])));
            auto Q = make_group("Aut", std::move(mul));
            for (const auto& phi : all_homs(P, *Q)) {
                // transport choices: for each non-base object a morphism into b0
                std::vector<int> others;
                for (int a : c.objects)
                    if (a != c.base) others.push_back(a);
                std::vector<std::vector<int>> cand(others.size());
                bool ok = true;
                for (std::size_t i = 0; i < others.size(); ++i) {
                    for (int bb = 0; bb < B->nobj; ++bb)
                        for (int mu : B->hom[bb][b0]) cand[i].push_back(mu);
                    if (cand[i].empty()) { ok = false; break; }
                }
                if (!ok) continue;
                std::vector<std::size_t> pos(others.size(), 0);
                while (true) {
                    Frag fr;
                    std::vector<int> t(A->nobj, -1);  // F(tree[a]) per object
                    fr.obj.emplace_back(c.base, b0);
                    t[c.base] = B->idm[b0];
                    for (std::size_t i = 0; i < others.size(); ++i) {
                        int mu = cand[i][pos[i]];
                        fr.obj.emplace_back(others[i], B->src[mu]);
                        t[others[i]] = mu;
                    }
                    for (int a : c.objects)
                        for (int a2 : c.objects)
                            for (int m : A->hom[a][a2]) {
                                // p = tree[a2] . m . tree[a]^-1, a loop at base
                                int p = A->comp_.at(A->key(
                                    c.tree[a2],
                                    A->comp_.at(A->key(m, A->invm[c.tree[a]]))));
                                int q = loops[phi[c.loop_idx.at(p)]];
                                int img = B->comp_.at(B->key(
                                    B->invm[t[a2]], B->comp_.at(B->key(q, t[a]))));
                                fr.mor.emplace_back(m, img);
                            }
                    frags.push_back(std::move(fr));
                    check_capacity(frags.size() <= cap, "all_functors: cap exceeded");
                    if (others.empty()) break;
                    int i = static_cast<int>(others.size()) - 1;
                    while (i >= 0 && pos[i] + 1 == cand[i].size()) pos[i--] = 0;
                    if (i < 0) break;
                    ++pos[i];
                }
            }
        }
        per_comp.push_back(std::move(frags));
        if (per_comp.back().empty()) return {};
    }
    std::vector<GroupoidMap> out;
    std::vector<std::size_t> pos(per_comp.size(), 0);
    while (true) {
        std::vector<int> omap(A->nobj, -1), mmap(A->nmor(), -1);
        for (std::size_t i = 0; i < per_comp.size(); ++i) {
            const auto& fr = per_comp[i][pos[i]];
            for (auto [a, b] : fr.obj) omap[a] = b;
            for (auto [m, im] : fr.mor) mmap[m] = im;
        }
        out.push_back(GroupoidMap{A, B, std::move(omap), std::move(mmap)});
        check_capacity(out.size() <= cap, "all_functors: cap exceeded");
        if (per_comp.empty()) break;
        int i = static_cast<int>(per_comp.size()) - 1;
        while (i >= 0 && pos[i] + 1 == per_comp[i].size()) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
    }
    return out;
}

/// All natural transformations F => G (all components are isos in a groupoid).
inline std::vector<std::vector<int>> all_nat_transfs(const GroupoidMap& F,
                                                     const GroupoidMap& G) {
    require(F.src == G.src && F.dst == G.dst, "all_nat_transfs: parallel functors only");
    const auto& A = *F.src;
    const auto& B = *F.dst;
    auto comps = components(A);
    std::vector<std::vector<std::vector<int>>> per_comp;  // candidate eta fragments
    for (const auto& c : comps) {
        std::vector<std::vector<int>> frags;
        for (int e0 : B.hom[F.omap[c.base]][G.omap[c.base]]) {
            bool ok = true;
            for (int p : c.loop_mor) {
                int lhs = B.comp_.at(B.key(e0, F.mmap[p]));
                int rhs = B.comp_.at(B.key(G.mmap[p], e0));
                if (lhs != rhs) { ok = false; break; }
            }
            if (!ok) continue;
            std::vector<int> eta(A.nobj, -1);
            for (int a : c.objects) {
                // eta_a = G(tree_a)^-1 . e0 . F(tree_a)
                eta[a] = B.comp_.at(B.key(
                    B.invm[G.mmap[c.tree[a]]],
                    B.comp_.at(B.key(e0, F.mmap[c.tree[a]]))));
            }
            frags.push_back(std::move(eta));
        }
        if (frags.empty()) return {};
        per_comp.push_back(std::move(frags));
    }
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> pos(per_comp.size(), 0);
    while (true) {
        std::vector<int> eta(A.nobj, -1);
        for (std::size_t i = 0; i < per_comp.size(); ++i)
            for (int a = 0; a < A.nobj; ++a)
                if (per_comp[i][pos[i]][a] >= 0) eta[a] = per_comp[i][pos[i]][a];
        // full naturality (tree construction guarantees it; checked for safety)
        bool ok = true;
        for (int m = 0; m < A.nmor() && ok; ++m) {
            int lhs = B.comp_.at(B.key(eta[A.tgt[m]], F.mmap[m]));
            int rhs = B.comp_.at(B.key(G.mmap[m], eta[A.src[m]]));
            ok = lhs == rhs;
        }
        if (ok) out.push_back(eta);
        if (per_comp.empty()) break;
        int i = static_cast<int>(per_comp.size()) - 1;
        while (i >= 0 && pos[i] + 1 == per_comp[i].size()) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
    }
    return out;
}

inline bool naturally_isomorphic(const GroupoidMap& F, const GroupoidMap& G) {
    if (F.src != G.src || F.dst != G.dst) return false;
    return !all_nat_transfs(F, G).empty();
}

/// Full subgroupoid on one base object per component, with the inclusion and
/// the tree-conjugation retraction.  retr ∘ incl is the identity and
/// incl ∘ retr is naturally isomorphic to it, so both are equivalences.
struct GroupoidSkeleton {
    GroupoidPtr skel;
    GroupoidMap incl;
    GroupoidMap retr;
};

inline GroupoidSkeleton skeleton_groupoid(const GroupoidPtr& A) {
    auto comps = components(*A);
    int p = static_cast<int>(comps.size());
    std::vector<int> cof(A->nobj, -1), treem(A->nobj, -1);
    for (int c = 0; c < p; ++c)
        for (int a : comps[c].objects) {
            cof[a] = c;
            treem[a] = comps[c].tree[a];  // a -> base
        }
    std::vector<int> msrc, mtgt, old_id;
    std::map<int, int> new_id;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int e : A->hom[comps[i].base][comps[j].base]) {
                new_id[e] = static_cast<int>(msrc.size());
                msrc.push_back(i);
                mtgt.push_back(j);
                old_id.push_back(e);
            }
    int M = static_cast<int>(msrc.size());
    std::vector<int> idm(p), invm(M);
    for (int i = 0; i < p; ++i) idm[i] = new_id.at(A->idm[comps[i].base]);
    for (int e = 0; e < M; ++e) invm[e] = new_id.at(A->invm[old_id[e]]);
    std::unordered_map<std::uint64_t, int> comp;
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (msrc[g] != mtgt[f]) continue;
            comp[static_cast<std::uint64_t>(g) * M + f] =
                new_id.at(A->comp_.at(A->key(old_id[g], old_id[f])));
        }
    GroupoidPtr S = make_groupoid(p, msrc, mtgt, std::move(idm), std::move(invm),
                                  std::move(comp));
    std::vector<int> iomap(p);
    for (int i = 0; i < p; ++i) iomap[i] = comps[i].base;
    GroupoidMap incl = make_functor(S, A, std::move(iomap), old_id);
    std::vector<int> rmmap(A->nmor());
    for (int e = 0; e < A->nmor(); ++e)
        rmmap[e] = new_id.at(A->comp_.at(
            A->key(treem[A->tgt[e]], A->comp_.at(A->key(e, A->invm[treem[A->src[e]]])))));
    GroupoidMap retr = make_functor(A, S, cof, std::move(rmmap));
    return GroupoidSkeleton{std::move(S), std::move(incl), std::move(retr)};
}

// --- universal property certification ---

/// Standard battery of small test groupoids for cone checks.
inline std::vector<GroupoidPtr> standard_test_groupoids() {
    return {point_groupoid(), discrete_groupoid(2), one_object_groupoid(cyclic_group(2)),
            contractible_groupoid(2)};
}

/// Certifies the iso-comma square against every cone from every test
/// groupoid: each cone (u, v, phi) must factor through the apex by exactly
/// one strict functor matching the projections and the witness 2-cell.
inline CheckResult verify_pullback_up(const IsoCommaSquare& sq,
                                      const std::vector<GroupoidPtr>& tests) {
    const auto& A = *sq.f.src;
    const auto& B = *sq.g.src;
    (void)A;
    (void)B;
    const auto& C = *sq.f.dst;
    const auto& P = *sq.apex;
    for (const auto& T : tests) {
        auto us = all_functors(T, sq.f.src);
        auto vs = all_functors(T, sq.g.src);
        for (const auto& u : us)
            for (const auto& v : vs) {
                auto fu = compose_functors(sq.f, u);
                auto gv = compose_functors(sq.g, v);
                for (const auto& phi : all_nat_transfs(fu, gv)) {
                    // count strict factorizations
                    // objects are forced: h(t) = (u t, v t, phi_t)
                    std::vector<int> hobj(T->nobj, -1);
                    bool ok = true;
                    for (int t = 0; t < T->nobj && ok; ++t) {
                        int found = -1, count = 0;
                        for (int i = 0; i < P.nobj; ++i)
                            if (sq.pA.omap[i] == u.omap[t] && sq.pB.omap[i] == v.omap[t] &&
                                sq.witness[i] == phi[t]) {
                                found = i;
                                ++count;
                            }
                        if (count != 1) {
                            return {false, "apex object multiplicity " +
                                               std::to_string(count) + " for a cone point"};
                        }
                        hobj[t] = found;
                    }
                    std::vector<int> hmor(T->nmor(), -1);
                    for (int m = 0; m < T->nmor() && ok; ++m) {
                        int found = -1, count = 0;
                        for (int pm = 0; pm < P.nmor(); ++pm)
                            if (P.src[pm] == hobj[T->src[m]] && P.tgt[pm] == hobj[T->tgt[m]] &&
                                sq.pA.mmap[pm] == u.mmap[m] && sq.pB.mmap[pm] == v.mmap[m]) {
                                found = pm;
                                ++count;
                            }
                        if (count != 1) {
                            return {false, "apex morphism multiplicity " +
                                               std::to_string(count) + " for a cone arrow"};
                        }
                        hmor[m] = found;
                    }
                    // h is a functor and pastes to the cone
                    auto h = make_functor(T, sq.apex, hobj, hmor);
                    auto pu = compose_functors(sq.pA, h);
                    auto pv = compose_functors(sq.pB, h);
                    if (!(pu == u) || !(pv == v))
                        return {false, "factorization does not recover the cone legs"};
                    for (int t = 0; t < T->nobj; ++t)
                        if (sq.witness[hobj[t]] != phi[t])
                            return {false, "witness 2-cell mismatch"};
                    (void)C;
                }
            }
    }
    return {true, ""};
}

// --- full-then-faithful factorization ---

struct EMFactorization {
    GroupoidPtr image;
    GroupoidMap e;  // component-full part, source -> image
    GroupoidMap m;  // faithful part, image -> target
};

/// Factor F as (full on each component, bijective on components) followed by
/// a faithful functor, via the image groupoid: objects of the source, homs
/// the set-images of F on each hom-set.
inline EMFactorization em_factorize(const GroupoidMap& F) {
    const auto& A = *F.src;
    const auto& C = *F.dst;
    std::vector<int> isrc, itgt;
    std::map<std::array<int, 3>, int> midx;  // (a, a2, C-morphism) -> image id
    std::vector<std::array<int, 3>> imor;
    for (int a = 0; a < A.nobj; ++a)
        for (int a2 = 0; a2 < A.nobj; ++a2) {
            std::set<int> vals;
            for (int m : A.hom[a][a2]) vals.insert(F.mmap[m]);
            for (int v : vals) {
                midx[{a, a2, v}] = static_cast<int>(imor.size());
                imor.push_back({a, a2, v});
                isrc.push_back(a);
                itgt.push_back(a2);
            }
        }
    int M = static_cast<int>(imor.size());
    std::vector<int> idm(A.nobj), invm(M);
    for (int a = 0; a < A.nobj; ++a) idm[a] = midx.at({a, a, C.idm[F.omap[a]]});
    for (int m = 0; m < M; ++m)
        invm[m] = midx.at({imor[m][1], imor[m][0], C.invm[imor[m][2]]});
    std::unordered_map<std::uint64_t, int> comp;
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (imor[f][1] != imor[g][0]) continue;
            int c = C.comp_.at(C.key(imor[g][2], imor[f][2]));
            comp[static_cast<std::uint64_t>(g) * M + f] =
                midx.at({imor[f][0], imor[g][1], c});
        }
    EMFactorization out;
    out.image = make_groupoid(A.nobj, std::move(isrc), std::move(itgt), std::move(idm),
                              std::move(invm), std::move(comp));
    std::vector<int> eo(A.nobj), em(A.nmor()), mo(A.nobj), mm(M);
    std::iota(eo.begin(), eo.end(), 0);
    for (int m = 0; m < A.nmor(); ++m)
        em[m] = midx.at({A.src[m], A.tgt[m], F.mmap[m]});
    for (int a = 0; a < A.nobj; ++a) mo[a] = F.omap[a];
    for (int m = 0; m < M; ++m) mm[m] = imor[m][2];
    out.e = make_functor(F.src, out.image, std::move(eo), std::move(em));
    out.m = make_functor(out.image, F.dst, std::move(mo), std::move(mm));
    return out;
}

/// Equivalence of finite groupoids: component-wise matching with isomorphic
/// automorphism groups.
inline bool equivalent_groupoids(const FiniteGroupoid& A, const FiniteGroupoid& B) {
    auto ca = components(A);
    auto cb = components(B);
    if (ca.size() != cb.size()) return false;
    std::vector<char> used(cb.size(), 0);
    std::function<bool(std::size_t)> match = [&](std::size_t i) -> bool {
        if (i == ca.size()) return true;
        for (std::size_t j = 0; j < cb.size(); ++j) {
            if (used[j]) continue;
            if (ca[i].skeleton->n != cb[j].skeleton->n) continue;
            if (all_isos(*ca[i].skeleton, *cb[j].skeleton).empty()) continue;
            used[j] = 1;
            if (match(i + 1)) return true;
            used[j] = 0;
        }
        return false;
    };
    return match(0);
}

/// Canonical serialization for hashing and interchange.
inline std::string serialize_groupoid(const FiniteGroupoid& A) {
    std::string s = "schema: groupoid/1\n";
    s += "objects: " + std::to_string(A.nobj) + "\n";
    s += "morphisms: " + std::to_string(A.nmor()) + "\n";
    s += "src: " + join_ints(A.src) + "\n";
    s += "tgt: " + join_ints(A.tgt) + "\n";
    s += "ids: " + join_ints(A.idm) + "\n";
    s += "inv: " + join_ints(A.invm) + "\n";
    s += "comp:\n";
    for (int f = 0; f < A.nmor(); ++f)
        for (int b = 0; b < A.nobj; ++b)
            for (int g : A.hom[A.tgt[f]][b])
                s += std::to_string(f) + " " + std::to_string(g) + " " +
                     std::to_string(A.comp_.at(A.key(g, f))) + "\n";
    return s;
}

inline std::string groupoid_hash(const FiniteGroupoid& A) {
    return hash_hex(fnv1a(serialize_groupoid(A)));
}

}  // namespace eqalg
