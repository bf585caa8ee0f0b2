#pragma once

#include "eqalg/group.hpp"

namespace eqalg {

/// Finite left G-set given by its full action table act[g][x].
/// Immutable value type; the group is shared by pointer and map composition
/// requires pointer-identical groups.
struct GSet {
    GroupPtr G;
    int n = 0;
    std::vector<std::vector<int>> act;  // act[g][x]

    int apply(int g, int x) const { return act[g][x]; }

    bool operator==(const GSet& o) const {
        return G == o.G && n == o.n && act == o.act;
    }
};

struct GSetMap {
    GSet src, dst;
    std::vector<int> f;

    int operator()(int x) const { return f[x]; }

    bool operator==(const GSetMap& o) const {
        return src == o.src && dst == o.dst && f == o.f;
    }
};

inline GSet make_gset(GroupPtr G, std::vector<std::vector<int>> act) {
    GSet X;
    X.G = std::move(G);
    require(static_cast<int>(act.size()) == X.G->n, "gset: action table rows != |G|");
    X.n = act.empty() ? 0 : static_cast<int>(act[0].size());
    check_capacity(X.n <= kMaxPoints, "gset: point cap exceeded");
    for (const auto& row : act) {
        require(static_cast<int>(row.size()) == X.n, "gset: ragged action table");
        for (int v : row) require(0 <= v && v < X.n, "gset: entry out of range");
    }
    for (int x = 0; x < X.n; ++x)
        require(act[X.G->e][x] == x, "gset: identity does not act trivially");
    for (int g = 0; g < X.G->n; ++g)
        for (int h = 0; h < X.G->n; ++h) {
            int gh = X.G->mul[g][h];
            for (int x = 0; x < X.n; ++x)
                require(act[g][act[h][x]] == act[gh][x], "gset: action not associative");
        }
    X.act = std::move(act);
    return X;
}

inline GSet trivial_gset(const GroupPtr& G, int npoints) {
    std::vector<std::vector<int>> act(G->n, std::vector<int>(npoints));
    for (auto& row : act) std::iota(row.begin(), row.end(), 0);
    GSet X;
    X.G = G;
    X.n = npoints;
    X.act = std::move(act);
    return X;
}

inline GSet empty_gset(const GroupPtr& G) { return trivial_gset(G, 0); }

/// G/H for a subgroup given by its sorted element list. Cosets are indexed
/// in order of their least element; point 0 is the coset H itself.
inline GSet coset_gset(const GroupPtr& G, const std::vector<int>& H) {
    std::vector<int> coset(G->n, -1);
    std::vector<int> reps;
    for (int g = 0; g < G->n; ++g) {
        if (coset[g] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(g);
        for (int h : H) coset[G->mul[g][h]] = c;
    }
    int k = static_cast<int>(reps.size());
    std::vector<std::vector<int>> act(G->n, std::vector<int>(k));
    for (int g = 0; g < G->n; ++g)
        for (int c = 0; c < k; ++c) act[g][c] = coset[G->mul[g][reps[c]]];
    GSet X;
    X.G = G;
    X.n = k;
    X.act = std::move(act);
    return X;
}

inline GSet orbit_gset(const GroupPtr& G, int cls) {
    return coset_gset(G, G->subgroup_classes().at(cls));
}

/// X then Y, with point offsets preserved (X points first).
inline GSet disjoint_union(const GSet& X, const GSet& Y) {
    require(X.G == Y.G, "disjoint_union: different groups");
    std::vector<std::vector<int>> act(X.G->n, std::vector<int>(X.n + Y.n));
    for (int g = 0; g < X.G->n; ++g) {
        for (int x = 0; x < X.n; ++x) act[g][x] = X.act[g][x];
        for (int y = 0; y < Y.n; ++y) act[g][X.n + y] = X.n + Y.act[g][y];
    }
    GSet U;
    U.G = X.G;
    U.n = X.n + Y.n;
    U.act = std::move(act);
    return U;
}

/// Cartesian product with the diagonal action; point (x, y) = x * Y.n + y.
inline GSet product_gset(const GSet& X, const GSet& Y) {
    require(X.G == Y.G, "product_gset: different groups");
    int n = X.n * Y.n;
    check_capacity(n <= kMaxPoints, "product_gset: point cap exceeded");
    std::vector<std::vector<int>> act(X.G->n, std::vector<int>(n));
    for (int g = 0; g < X.G->n; ++g)
        for (int x = 0; x < X.n; ++x)
            for (int y = 0; y < Y.n; ++y)
                act[g][x * Y.n + y] = X.act[g][x] * Y.n + Y.act[g][y];
    GSet P;
    P.G = X.G;
    P.n = n;
    P.act = std::move(act);
    return P;
}

inline GSetMap make_map(GSet src, GSet dst, std::vector<int> f) {
    require(src.G == dst.G, "map: different groups");
    require(static_cast<int>(f.size()) == src.n, "map: wrong length");
    for (int v : f) require(0 <= v && v < dst.n, "map: value out of range");
    for (int g = 0; g < src.G->n; ++g)
        for (int x = 0; x < src.n; ++x)
            require(f[src.act[g][x]] == dst.act[g][f[x]], "map: not equivariant");
    return GSetMap{std::move(src), std::move(dst), std::move(f)};
}

inline GSetMap identity_map(const GSet& X) {
    std::vector<int> f(X.n);
    std::iota(f.begin(), f.end(), 0);
    return GSetMap{X, X, std::move(f)};
}

inline GSetMap compose_maps(const GSetMap& g, const GSetMap& f) {
    require(f.dst == g.src, "compose: maps not composable");
    std::vector<int> h(f.src.n);
    for (int x = 0; x < f.src.n; ++x) h[x] = g.f[f.f[x]];
    return GSetMap{f.src, g.dst, std::move(h)};
}

/// f ⊔ g between the disjoint unions, second summand shifted.
inline GSetMap disjoint_union_map(const GSetMap& f, const GSetMap& g) {
    std::vector<int> h(f.f);
    for (int y : g.f) h.push_back(f.dst.n + y);
    return make_map(disjoint_union(f.src, g.src), disjoint_union(f.dst, g.dst),
                    std::move(h));
}

// --- orbits ---

struct Orbit {
    std::vector<int> points;  // sorted
    int base = 0;             // least point
    std::vector<int> stab;    // stabilizer of base, sorted elements
    int stab_class = 0;       // index into G->subgroup_classes()
};

inline std::vector<Orbit> orbits(const GSet& X) {
    std::vector<Orbit> out;
    std::vector<char> seen(X.n, 0);
    for (int x = 0; x < X.n; ++x) {
        if (seen[x]) continue;
        Orbit o;
        o.base = x;
        std::set<int> pts;
        for (int g = 0; g < X.G->n; ++g) pts.insert(X.act[g][x]);
        o.points.assign(pts.begin(), pts.end());
        for (int p : o.points) seen[p] = 1;
        for (int g = 0; g < X.G->n; ++g)
            if (X.act[g][x] == x) o.stab.push_back(g);
        o.stab_class = X.G->class_of(o.stab);
        out.push_back(std::move(o));
    }
    return out;
}

/// Multiset of stabilizer classes, sorted: a complete isomorphism invariant.
inline std::vector<int> orbit_type(const GSet& X) {
    std::vector<int> t;
    for (const auto& o : orbits(X)) t.push_back(o.stab_class);
    std::sort(t.begin(), t.end());
    return t;
}

inline bool gset_iso(const GSet& X, const GSet& Y) {
    require(X.G == Y.G, "gset_iso: different groups");
    return orbit_type(X) == orbit_type(Y);
}

/// Number of points fixed by every element of H.
inline Int fixed_point_count(const GSet& X, const std::vector<int>& H) {
    Int c = 0;
    for (int x = 0; x < X.n; ++x) {
        bool fix = true;
        for (int h : H)
            if (X.act[h][x] != x) { fix = false; break; }
        if (fix) ++c;
    }
    return c;
}

// --- limits and transports ---

struct PullbackSquare {
    GSet P;
    GSetMap p1, p2;                         // to src(f), src(g)
    std::vector<std::pair<int, int>> pts;   // P point -> (x, y)
};

/// Strict pullback of f: X -> Z, g: Y -> Z; points are pairs (x, y) with
/// f(x) = g(y) in lexicographic order.
inline PullbackSquare pullback(const GSetMap& f, const GSetMap& g) {
    require(f.dst == g.dst, "pullback: targets differ");
    std::vector<std::pair<int, int>> pts;
    for (int x = 0; x < f.src.n; ++x)
        for (int y = 0; y < g.src.n; ++y)
            if (f.f[x] == g.f[y]) pts.emplace_back(x, y);
    std::map<std::pair<int, int>, int> idx;
    for (std::size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = static_cast<int>(i);
    int n = static_cast<int>(pts.size());
    check_capacity(n <= kMaxPoints, "pullback: point cap exceeded");
    const GroupPtr& G = f.src.G;
    std::vector<std::vector<int>> act(G->n, std::vector<int>(n));
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = pts[i].first;
        b[i] = pts[i].second;
        for (int gg = 0; gg < G->n; ++gg)
            act[gg][i] = idx[{f.src.act[gg][pts[i].first], g.src.act[gg][pts[i].second]}];
    }
    PullbackSquare sq;
    sq.P.G = G;
    sq.P.n = n;
    sq.P.act = std::move(act);
    sq.p1 = GSetMap{sq.P, f.src, std::move(a)};
    sq.p2 = GSetMap{sq.P, g.src, std::move(b)};
    sq.pts = std::move(pts);
    return sq;
}

/// Restriction of a G-set along an arbitrary homomorphism phi: H -> G
/// (covers restriction to subgroups and inflation along quotients).
inline GSet restrict_along(const GroupPtr& H, const std::vector<int>& phi,
                           const GSet& X) {
    require(static_cast<int>(phi.size()) == H->n, "restrict_along: wrong hom length");
    require(is_hom(*H, *X.G, phi), "restrict_along: not a homomorphism");
    std::vector<std::vector<int>> act(H->n);
    for (int h = 0; h < H->n; ++h) act[h] = X.act[phi[h]];
    GSet Y;
    Y.G = H;
    Y.n = X.n;
    Y.act = std::move(act);
    return Y;
}

struct Induced {
    GSet Y;                                // G x_H X
    GSetMap proj;                          // to G/H
    std::vector<std::pair<int, int>> pts;  // (coset index, X point)
};

/// G x_H X for H given inside G by sorted element list; X is a set with an
/// action of the subgroup group H (see FiniteGroup::subgroup_group).
inline Induced induce(const GroupPtr& G, const std::vector<int>& H, const GSet& X) {
    const auto& emb = G->subgroup_group(H);
    require(X.G == emb.group, "induce: X must be a set over subgroup_group(H)");
    GSet base = coset_gset(G, H);
    // coset reps: least element of each coset
    std::vector<int> rep(base.n, -1), cosetof(G->n, -1);
    {
        std::vector<int> c(G->n, -1);
        std::vector<int> reps;
        for (int g = 0; g < G->n; ++g) {
            if (c[g] >= 0) continue;
            int k = static_cast<int>(reps.size());
            reps.push_back(g);
            for (int h : H) c[G->mul[g][h]] = k;
        }
        for (int i = 0; i < base.n; ++i) rep[i] = reps[i];
        cosetof = std::move(c);
    }
    std::vector<int> subidx(G->n, -1);
    for (std::size_t i = 0; i < H.size(); ++i) subidx[H[i]] = static_cast<int>(i);
    int n = base.n * X.n;
    check_capacity(n <= kMaxPoints, "induce: point cap exceeded");
    auto id = [&](int c, int x) { return c * X.n + x; };
    std::vector<std::vector<int>> act(G->n, std::vector<int>(n));
    std::vector<std::pair<int, int>> pts(n);
    std::vector<int> proj(n);
    for (int c = 0; c < base.n; ++c)
        for (int x = 0; x < X.n; ++x) {
            pts[id(c, x)] = {c, x};
            proj[id(c, x)] = c;
            for (int g = 0; g < G->n; ++g) {
                int gr = G->mul[g][rep[c]];
                int c2 = cosetof[gr];
                int h = G->mul[G->inv[rep[c2]]][gr];  // in H
                act[g][id(c, x)] = id(c2, X.act[subidx[h]][x]);
            }
        }
    Induced out;
    out.Y.G = G;
    out.Y.n = n;
    out.Y.act = std::move(act);
    out.proj = GSetMap{out.Y, base, std::move(proj)};
    out.pts = std::move(pts);
    return out;
}

enum class DeflateMode { quotient, fixed };

/// Pushforward of X along a surjective homomorphism psi: G -> Q whose kernel
/// acts on X: quotient mode takes kernel orbits, fixed mode kernel fixed points.
inline GSet deflate_along(const GroupPtr& Q, const std::vector<int>& psi,
                          const GSet& X, DeflateMode mode) {
    const GroupPtr& G = X.G;
    require(static_cast<int>(psi.size()) == G->n, "deflate_along: wrong hom length");
    require(is_hom(*G, *Q, psi), "deflate_along: not a homomorphism");
    std::vector<int> section(Q->n, -1);
    for (int g = 0; g < G->n; ++g)
        if (section[psi[g]] < 0) section[psi[g]] = g;
    for (int q = 0; q < Q->n; ++q)
        require(section[q] >= 0, "deflate_along: homomorphism not surjective");
    std::vector<int> kernel;
    for (int g = 0; g < G->n; ++g)
        if (psi[g] == Q->e) kernel.push_back(g);

    if (mode == DeflateMode::fixed) {
        std::vector<int> pts;
        for (int x = 0; x < X.n; ++x) {
            bool fix = true;
            for (int k : kernel)
                if (X.act[k][x] != x) { fix = false; break; }
            if (fix) pts.push_back(x);
        }
        std::vector<int> pos(X.n, -1);
        for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> act(Q->n, std::vector<int>(pts.size()));
        for (int q = 0; q < Q->n; ++q)
            for (std::size_t i = 0; i < pts.size(); ++i)
                act[q][i] = pos[X.act[section[q]][pts[i]]];
        GSet Y;
        Y.G = Q;
        Y.n = static_cast<int>(pts.size());
        Y.act = std::move(act);
        return Y;
    }

    // kernel orbits
    std::vector<int> cls(X.n, -1);
    int m = 0;
    for (int x = 0; x < X.n; ++x) {
        if (cls[x] >= 0) continue;
        std::vector<int> stack{x};
        cls[x] = m;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            for (int k : kernel) {
                int z = X.act[k][y];
                if (cls[z] < 0) {
                    cls[z] = m;
                    stack.push_back(z);
                }
            }
        }
        ++m;
    }
    std::vector<std::vector<int>> act(Q->n, std::vector<int>(m));
    for (int q = 0; q < Q->n; ++q) {
        for (int x = 0; x < X.n; ++x) act[q][cls[x]] = cls[X.act[section[q]][x]];
    }
    GSet Y;
    Y.G = Q;
    Y.n = m;
    Y.act = std::move(act);
    return Y;
}

// --- dependent product and distributivity ---

/// The diagram produced by dependent_product(n: A -> B, m: X -> A):
///
///      X <-eps- Xp --n_prime--> Y
///               |               |
///            m_dbl           m_prime
///               v               v
///               A -----n------> B
///
/// where Y has points (b, s) with s a section of m over the fiber of n at b,
/// the square is a pullback, and eps evaluates a section at a fiber point.
struct DistributivityDiagram {
    GSetMap n;        // A -> B
    GSetMap m;        // X -> A
    GSet Y;           // dependent product
    GSetMap m_prime;  // Y -> B
    GSet Xp;          // A x_B Y
    GSetMap n_prime;  // Xp -> Y
    GSetMap m_dbl;    // Xp -> A
    GSetMap eps;      // Xp -> X
};

inline DistributivityDiagram dependent_product(const GSetMap& n, const GSetMap& m) {
    require(m.dst == n.src, "dependent_product: m must land in the source of n");
    const GSet& A = n.src;
    const GSet& B = n.dst;
    const GSet& X = m.src;
    const GroupPtr& G = A.G;

    // fibers of n, sorted point lists
    std::vector<std::vector<int>> fiber(B.n);
    for (int a = 0; a < A.n; ++a) fiber[n.f[a]].push_back(a);
    // preimages of m
    std::vector<std::vector<int>> pre(A.n);
    for (int x = 0; x < X.n; ++x) pre[m.f[x]].push_back(x);

    // Y points: (b, s) with s listed in fiber order; lexicographic order
    std::vector<std::pair<int, std::vector<int>>> ypts;
    for (int b = 0; b < B.n; ++b) {
        std::vector<std::vector<int>> choice;
        bool any = true;
        for (int a : fiber[b]) {
            if (pre[a].empty()) { any = false; break; }
            choice.push_back(pre[a]);
        }
        if (!any) continue;
        std::vector<std::size_t> pos(choice.size(), 0);
        while (true) {
            std::vector<int> s(choice.size());
            for (std::size_t i = 0; i < choice.size(); ++i) s[i] = choice[i][pos[i]];
            ypts.emplace_back(b, std::move(s));
            check_capacity(ypts.size() <= static_cast<std::size_t>(kMaxPoints),
                           "dependent_product: point cap exceeded");
            int i = static_cast<int>(choice.size()) - 1;
            while (i >= 0 && pos[i] + 1 == choice[i].size()) pos[i--] = 0;
            if (i < 0) break;
            ++pos[i];
        }
    }
    std::sort(ypts.begin(), ypts.end());
    std::map<std::pair<int, std::vector<int>>, int> yidx;
    for (std::size_t i = 0; i < ypts.size(); ++i) yidx[ypts[i]] = static_cast<int>(i);

    // section value at a fiber point (fiber lists are sorted by construction)
    auto value_at = [&](const std::pair<int, std::vector<int>>& y, int a) {
        const auto& f = fiber[y.first];
        auto it = std::lower_bound(f.begin(), f.end(), a);
        return y.second[static_cast<std::size_t>(it - f.begin())];
    };

    int ny = static_cast<int>(ypts.size());
    std::vector<std::vector<int>> yact(G->n, std::vector<int>(ny));
    for (int g = 0; g < G->n; ++g) {
        int gi = G->inv[g];
        for (int i = 0; i < ny; ++i) {
            int b2 = B.act[g][ypts[i].first];
            std::vector<int> s2(fiber[b2].size());
            for (std::size_t j = 0; j < fiber[b2].size(); ++j) {
                int a2 = fiber[b2][j];
                s2[j] = X.act[g][value_at(ypts[i], A.act[gi][a2])];
            }
            auto it = yidx.find({b2, s2});
            require(it != yidx.end(), "dependent_product: action escapes section set");
            yact[g][i] = it->second;
        }
    }
    GSet Y;
    Y.G = G;
    Y.n = ny;
    Y.act = std::move(yact);
    std::vector<int> mp(ny);
    for (int i = 0; i < ny; ++i) mp[i] = ypts[i].first;
    GSetMap m_prime{Y, B, std::move(mp)};

    auto sq = pullback(n, m_prime);  // points (a, y) with n(a) = m_prime(y)
    std::vector<int> ev(sq.P.n);
    for (int i = 0; i < sq.P.n; ++i)
        ev[i] = value_at(ypts[sq.pts[i].second], sq.pts[i].first);

    DistributivityDiagram d;
    d.n = n;
    d.m = m;
    d.Y = Y;
    d.m_prime = m_prime;
    d.Xp = sq.P;
    d.m_dbl = sq.p1;
    d.n_prime = sq.p2;
    d.eps = GSetMap{sq.P, X, std::move(ev)};
    return d;
}

// --- map enumeration ---

/// All equivariant maps X -> Y, deterministic order (one candidate image per
/// orbit base point, lexicographic).
inline std::vector<GSetMap> all_maps(const GSet& X, const GSet& Y) {
    require(X.G == Y.G, "all_maps: different groups");
    auto obs = orbits(X);
    std::vector<std::vector<int>> cand(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (int y = 0; y < Y.n; ++y) {
            bool ok = true;
            for (int h : obs[i].stab)
                if (Y.act[h][y] != y) { ok = false; break; }
            if (ok) cand[i].push_back(y);
        }
        if (cand[i].empty()) return {};
    }
    std::vector<GSetMap> out;
    std::vector<std::size_t> pos(obs.size(), 0);
    while (true) {
        std::vector<int> f(X.n, -1);
        for (std::size_t i = 0; i < obs.size(); ++i) {
            int x0 = obs[i].base, y0 = cand[i][pos[i]];
            for (int g = 0; g < X.G->n; ++g) f[X.act[g][x0]] = Y.act[g][y0];
        }
        out.push_back(GSetMap{X, Y, std::move(f)});
        if (obs.empty()) break;
        int i = static_cast<int>(obs.size()) - 1;
        while (i >= 0 && pos[i] + 1 == cand[i].size()) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
    }
    return out;
}

/// Maps psi: D -> Y with m_prime(psi(d)) = phi(d); phi and m_prime share a target.
inline std::vector<GSetMap> all_maps_over(const GSetMap& phi, const GSetMap& m_prime) {
    require(phi.dst == m_prime.dst, "all_maps_over: targets differ");
    const GSet& D = phi.src;
    const GSet& Y = m_prime.src;
    auto obs = orbits(D);
    std::vector<std::vector<int>> cand(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (int y = 0; y < Y.n; ++y) {
            if (m_prime.f[y] != phi.f[obs[i].base]) continue;
            bool ok = true;
            for (int h : obs[i].stab)
                if (Y.act[h][y] != y) { ok = false; break; }
            if (ok) cand[i].push_back(y);
        }
        if (cand[i].empty()) return {};
    }
    std::vector<GSetMap> out;
    std::vector<std::size_t> pos(obs.size(), 0);
    while (true) {
        std::vector<int> f(D.n, -1);
        for (std::size_t i = 0; i < obs.size(); ++i) {
            int x0 = obs[i].base, y0 = cand[i][pos[i]];
            for (int g = 0; g < D.G->n; ++g) f[D.act[g][x0]] = Y.act[g][y0];
        }
        out.push_back(GSetMap{D, Y, std::move(f)});
        if (obs.empty()) break;
        int i = static_cast<int>(obs.size()) - 1;
        while (i >= 0 && pos[i] + 1 == cand[i].size()) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
    }
    return out;
}

/// All G-sets with at most max_points points, one per isomorphism class,
/// built as disjoint unions of orbit representatives (deterministic order).
inline std::vector<GSet> enumerate_gsets(const GroupPtr& G, int max_points) {
    const auto& classes = G->subgroup_classes();
    std::vector<std::pair<int, int>> sizes;  // (class, orbit size)
    for (std::size_t c = 0; c < classes.size(); ++c)
        sizes.emplace_back(static_cast<int>(c), G->n / static_cast<int>(classes[c].size()));
    std::vector<GSet> out;
    std::vector<int> counts(classes.size(), 0);
    std::function<void(int, int)> rec = [&](int c, int left) {
        if (c == static_cast<int>(classes.size())) {
            GSet X = empty_gset(G);
            for (std::size_t i = 0; i < counts.size(); ++i)
                for (int k = 0; k < counts[i]; ++k)
                    X = disjoint_union(X, orbit_gset(G, static_cast<int>(i)));
            out.push_back(std::move(X));
            return;
        }
        int sz = sizes[c].second;
        for (int k = 0; k * sz <= left; ++k) {
            counts[c] = k;
            rec(c + 1, left - k * sz);
        }
        counts[c] = 0;
    };
    rec(0, max_points);
    std::stable_sort(out.begin(), out.end(),
                     [](const GSet& a, const GSet& b) { return a.n < b.n; });
    return out;
}

// --- verification ---

struct CheckResult {
    bool ok = true;
    std::string detail;
};

/// Exhaustive universal-property check of a distributivity diagram: for every
/// G-set D with |D| <= cap and every map phi: D -> B, pulling back a map
/// psi: (phi -> m_prime) along n and evaluating with eps must give a bijection
/// onto the maps (n^* phi -> m) over A.
inline CheckResult verify_distributivity_diagram(const DistributivityDiagram& d,
                                                 int cap) {
    const GSet& B = d.n.dst;
    for (const auto& D : enumerate_gsets(B.G, cap)) {
        for (const auto& phi : all_maps(D, B)) {
            auto lhs = all_maps_over(phi, d.m_prime);
            // n^* phi with explicit points (a, dpt)
            auto sq = pullback(d.n, phi);
            auto rhs = all_maps_over(sq.p1, d.m);  // maps over A into X
            if (lhs.size() != rhs.size()) {
                return {false, "section count " + std::to_string(lhs.size()) +
                                   " != over-A map count " + std::to_string(rhs.size())};
            }
            std::set<std::vector<int>> seen;
            for (const auto& psi : lhs) {
                std::vector<int> chi(sq.P.n);
                for (int i = 0; i < sq.P.n; ++i) {
                    int a = sq.pts[i].first, dpt = sq.pts[i].second;
                    int y = psi.f[dpt];
                    // eps at the Xp point (a, y)
                    int xp = -1;
                    for (int j = 0; j < d.Xp.n; ++j) {
                        // d.Xp points are (a, y) pairs via m_dbl and n_prime
                        if (d.m_dbl.f[j] == a && d.n_prime.f[j] == y) { xp = j; break; }
                    }
                    if (xp < 0) return {false, "pullback point missing"};
                    chi[i] = d.eps.f[xp];
                }
                if (!seen.insert(chi).second)
                    return {false, "composite not injective"};
                bool found = false;
                for (const auto& r : rhs)
                    if (r.f == chi) { found = true; break; }
                if (!found) return {false, "composite escapes over-A maps"};
            }
        }
    }
    return {true, ""};
}

// --- census of n-element G-sets vs homomorphisms to the symmetric group ---

struct SigmaCensus {
    long long iso_classes = 0;
    long long hom_classes = 0;
    bool match() const { return iso_classes == hom_classes; }
};

/// Counts isomorphism classes of n-element G-sets two ways: by orbit
/// decomposition, and as Hom(G, S_n) up to conjugation in S_n.
inline SigmaCensus sigma_classes(const GroupPtr& G, int n) {
    SigmaCensus out;
    // orbit multisets with sizes summing to exactly n
    const auto& classes = G->subgroup_classes();
    std::vector<int> osz;
    for (const auto& H : classes) osz.push_back(G->n / static_cast<int>(H.size()));
    std::function<long long(int, int)> rec = [&](int c, int left) -> long long {
        if (left == 0) return 1;
        if (c == static_cast<int>(osz.size())) return 0;
        long long total = 0;
        for (int k = 0; k * osz[c] <= left; ++k) total += rec(c + 1, left - k * osz[c]);
        return total;
    };
    out.iso_classes = rec(0, n);

    auto Sn = symmetric_group(n);
    auto homs = all_homs(*G, *Sn);
    std::set<std::vector<int>> seen;
    for (const auto& f : homs) {
        if (seen.count(f)) continue;
        ++out.hom_classes;
        for (int s = 0; s < Sn->n; ++s) {
            std::vector<int> g(f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
                g[i] = Sn->mul[Sn->mul[s][f[i]]][Sn->inv[s]];
            seen.insert(std::move(g));
        }
    }
    return out;
}

}  // namespace eqalg
