#pragma once

#include <mutex>

#include "eqalg/bispan.hpp"

namespace eqalg {

// --- Burnside ring elements ---

/// Virtual finite G-set: one exact integer per transitive class, in the
/// owning group's canonical subgroup-class order.
struct BurnsideElement {
    GroupPtr G;
    std::vector<Int> coeff;

    friend bool operator==(const BurnsideElement&, const BurnsideElement&) = default;
};

inline BurnsideElement burnside_zero(const GroupPtr& G) {
    return {G, std::vector<Int>(G->num_classes(), Int(0))};
}

/// Class of the one-point set, the multiplicative unit.
inline BurnsideElement burnside_unit(const GroupPtr& G) {
    auto x = burnside_zero(G);
    std::vector<int> all(G->n);
    std::iota(all.begin(), all.end(), 0);
    x.coeff[G->class_of(all)] = 1;
    return x;
}

inline BurnsideElement burnside_class(const GSet& X) {
    auto x = burnside_zero(X.G);
    for (const auto& o : orbits(X)) x.coeff[o.stab_class] += 1;
    return x;
}

inline BurnsideElement burnside_add(const BurnsideElement& x, const BurnsideElement& y) {
    require(x.G == y.G, "burnside_add: different groups");
    auto z = x;
    for (std::size_t c = 0; c < z.coeff.size(); ++c) z.coeff[c] += y.coeff[c];
    return z;
}

inline BurnsideElement burnside_neg(const BurnsideElement& x) {
    auto z = x;
    for (auto& c : z.coeff) c = -c;
    return z;
}

inline BurnsideElement burnside_scale(const Int& k, const BurnsideElement& x) {
    auto z = x;
    for (auto& c : z.coeff) c *= k;
    return z;
}

/// Bilinear extension of the product of transitive classes, each computed by
/// decomposing the cartesian product of coset sets into orbits.
inline BurnsideElement burnside_mul(const BurnsideElement& x, const BurnsideElement& y) {
    require(x.G == y.G, "burnside_mul: different groups");
    const GroupPtr& G = x.G;
    const auto& cls = G->subgroup_classes();
    auto z = burnside_zero(G);
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        GSet Xc = coset_gset(G, cls[c]);
        for (std::size_t d = 0; d < cls.size(); ++d) {
            if (y.coeff[d] == 0) continue;
            auto p = burnside_class(product_gset(Xc, coset_gset(G, cls[d])));
            z = burnside_add(z, burnside_scale(x.coeff[c] * y.coeff[d], p));
        }
    }
    return z;
}

// --- the marks homomorphism ---

/// M[c][d] = |(G/H_c)^{H_d}|. Lower triangular with positive diagonal in the
/// canonical class order (fixed points force H_d subconjugate to H_c).
struct MarksTable {
    GroupPtr G;
    std::vector<std::vector<Int>> M;
};

inline std::shared_ptr<const MarksTable> marks_table(const GroupPtr& G) {
    static std::mutex mu;
    static std::map<const FiniteGroup*, std::shared_ptr<const MarksTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(G.get());
        if (it != cache.end()) return it->second;
    }
    auto t = std::make_shared<MarksTable>();
    t->G = G;
    const auto& cls = G->subgroup_classes();
    t->M.resize(cls.size());
    for (std::size_t c = 0; c < cls.size(); ++c) {
        GSet Xc = coset_gset(G, cls[c]);
        for (std::size_t d = 0; d < cls.size(); ++d)
            t->M[c].push_back(fixed_point_count(Xc, cls[d]));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(G.get(), t).first->second;
}

struct MarksVector {
    GroupPtr G;
    std::vector<Int> v;  // per subgroup class

    friend bool operator==(const MarksVector&, const MarksVector&) = default;
};

inline MarksVector marks(const BurnsideElement& x) {
    auto t = marks_table(x.G);
    MarksVector out{x.G, std::vector<Int>(x.coeff.size(), Int(0))};
    for (std::size_t c = 0; c < x.coeff.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        for (std::size_t d = 0; d < x.coeff.size(); ++d)
            out.v[d] += x.coeff[c] * t->M[c][d];
    }
    return out;
}

struct UnmarksResult {
    bool integral = true;
    BurnsideElement value;  // meaningful only when integral
    std::string detail;
};

/// Exact back-substitution against the triangular marks matrix.
inline UnmarksResult unmarks(const MarksVector& v) {
    auto t = marks_table(v.G);
    int k = static_cast<int>(v.v.size());
    UnmarksResult out;
    out.value = burnside_zero(v.G);
    std::vector<Rat> x(k, Rat(0));
    for (int d = k - 1; d >= 0; --d) {
        Rat rest(v.v[d]);
        for (int c = d + 1; c < k; ++c) rest -= x[c] * Rat(t->M[c][d]);
        x[d] = rest / Rat(t->M[d][d]);
        if (boost::multiprecision::denominator(x[d]) != 1) {
            out.integral = false;
            out.detail = "coefficient of " + v.G->class_label(d) +
                         " is " + x[d].str();
            return out;
        }
        out.value.coeff[d] = boost::multiprecision::numerator(x[d]);
    }
    return out;
}

// --- transfers, restrictions, inflations, deflations ---

/// Induction on classes along H <= G: [H/L] goes to [G/L].
inline BurnsideElement transfer(const GroupPtr& G, const std::vector<int>& H,
                                const BurnsideElement& x) {
    const auto& emb = G->subgroup_group(H);
    require(x.G == emb.group, "transfer: element not over subgroup_group(H)");
    auto out = burnside_zero(G);
    const auto& hcls = emb.group->subgroup_classes();
    for (std::size_t c = 0; c < hcls.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        std::vector<int> L;
        for (int i : hcls[c]) L.push_back(emb.embed[i]);
        out.coeff[G->class_of(L)] += x.coeff[c];
    }
    return out;
}

inline BurnsideElement restrict_b(const GroupPtr& G, const std::vector<int>& H,
                                  const BurnsideElement& x) {
    require(x.G == G, "restrict_b: element not over G");
    const auto& emb = G->subgroup_group(H);
    auto out = burnside_zero(emb.group);
    const auto& cls = G->subgroup_classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        GSet R = restrict_along(emb.group, emb.embed, coset_gset(G, cls[c]));
        out = burnside_add(out, burnside_scale(x.coeff[c], burnside_class(R)));
    }
    return out;
}

/// Pullback of classes along G -> G/N; a ring map.
inline BurnsideElement inflate_b(const GroupPtr& G, const std::vector<int>& N,
                                 const BurnsideElement& x) {
    const auto& q = G->quotient_group(N);
    require(x.G == q.group, "inflate_b: element not over quotient_group(N)");
    auto out = burnside_zero(G);
    const auto& cls = q.group->subgroup_classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        GSet R = restrict_along(G, q.proj, coset_gset(q.group, cls[c]));
        out = burnside_add(out, burnside_scale(x.coeff[c], burnside_class(R)));
    }
    return out;
}

/// Pushforward along G -> G/N on classes: kernel orbits in quotient mode
/// (additive), kernel fixed points in fixed mode (a ring map).
inline BurnsideElement deflate_b(const GroupPtr& G, const std::vector<int>& N,
                                 const BurnsideElement& x, DeflateMode mode) {
    require(x.G == G, "deflate_b: element not over G");
    const auto& q = G->quotient_group(N);
    auto out = burnside_zero(q.group);
    const auto& cls = G->subgroup_classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        GSet D = deflate_along(q.group, q.proj, coset_gset(G, cls[c]), mode);
        out = burnside_add(out, burnside_scale(x.coeff[c], burnside_class(D)));
    }
    return out;
}

// --- norms ---

/// The G-set of H-equivariant sections over G/H: dependent product of the
/// projection G x_H X -> G/H along G/H -> pt. |result| = |X|^[G:H].
inline GSet norm_effective(const GroupPtr& G, const std::vector<int>& H, const GSet& X) {
    auto ind = induce(G, H, X);
    GSet base = ind.proj.dst;
    GSetMap collapse = make_map(base, trivial_gset(G, 1), std::vector<int>(base.n, 0));
    auto d = dependent_product(collapse, ind.proj);
    GSet out = d.m_prime.src;
    Int expect = 1;
    for (int i = 0; i < base.n; ++i) expect *= X.n;
    if (Int(out.n) != expect)
        throw verify_error("norm_effective: section count mismatch");
    return out;
}

/// Multiplicative pushforward on virtual elements, defined through marks:
/// the K-mark of the result is the product over double cosets KgH of the
/// (g^-1 K g cap H)-mark of x. Integrality of the solution is a hard
/// invariant; failure indicates a bug, not bad input.
inline BurnsideElement norm_virtual(const GroupPtr& G, const std::vector<int>& H,
                                    const BurnsideElement& x) {
    const auto& emb = G->subgroup_group(H);
    require(x.G == emb.group, "norm_virtual: element not over subgroup_group(H)");
    MarksVector mx = marks(x);
    std::vector<int> pos(G->n, -1);
    for (std::size_t i = 0; i < H.size(); ++i) pos[H[i]] = static_cast<int>(i);
    const auto& cls = G->subgroup_classes();
    MarksVector mv{G, std::vector<Int>(cls.size(), Int(0))};
    for (std::size_t k = 0; k < cls.size(); ++k) {
        const auto& K = cls[k];
        Int m = 1;
        for (int g : G->double_cosets(K, H)) {
            int gi = G->inv[g];
            std::vector<int> S;  // g^-1 K g cap H, H-local indices
            for (int u : K) {
                int w = G->mul[G->mul[gi][u]][g];
                if (pos[w] >= 0) S.push_back(pos[w]);
            }
            std::sort(S.begin(), S.end());
            m *= mx.v[emb.group->class_of(S)];
        }
        mv.v[k] = m;
    }
    auto r = unmarks(mv);
    if (!r.integral)
        throw verify_error("norm_virtual: non-integral marks solution: " + r.detail);
    return r.value;
}

// --- transports between subgroup levels ---

/// Transport along conjugation: classes of L over H to classes of g L g^-1
/// over g H g^-1.
inline BurnsideElement conj_elem(const GroupPtr& G, const std::vector<int>& H,
                                 int g, const BurnsideElement& x) {
    const auto& emb = G->subgroup_group(H);
    require(x.G == emb.group, "conj_elem: element not over subgroup_group(H)");
    auto Hc = G->conjugate_subgroup(g, H);
    const auto& emb2 = G->subgroup_group(Hc);
    std::vector<int> pos(G->n, -1);
    for (std::size_t i = 0; i < Hc.size(); ++i) pos[Hc[i]] = static_cast<int>(i);
    auto out = burnside_zero(emb2.group);
    const auto& cls = emb.group->subgroup_classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        if (x.coeff[c] == 0) continue;
        std::vector<int> L;
        for (int i : cls[c]) L.push_back(pos[G->conj(g, emb.embed[i])]);
        std::sort(L.begin(), L.end());
        out.coeff[emb2.group->class_of(L)] += x.coeff[c];
    }
    return out;
}

/// Re-owner for group objects with identical multiplication tables (the
/// subgroup-of-a-subgroup situation); class order then coincides.
inline BurnsideElement rebrand(const BurnsideElement& x, const GroupPtr& target) {
    require(x.G->mul == target->mul, "rebrand: multiplication tables differ");
    return {target, x.coeff};
}

/// Positions of the sorted sublist H inside the sorted list K.
inline std::vector<int> sublist_positions(const std::vector<int>& K,
                                          const std::vector<int>& H) {
    std::vector<int> out;
    for (int h : H) {
        auto it = std::lower_bound(K.begin(), K.end(), h);
        require(it != K.end() && *it == h, "sublist_positions: not a sublist");
        out.push_back(static_cast<int>(it - K.begin()));
    }
    return out;
}

// --- the Burnside Tambara functor as a functoriality oracle ---

namespace detail {
/// Orbit index of p and a transporter g with g . base = p.
inline std::pair<int, int> locate_orbit(const std::vector<Orbit>& obs,
                                        const GSet& X, int p) {
    for (std::size_t j = 0; j < obs.size(); ++j) {
        if (!std::binary_search(obs[j].points.begin(), obs[j].points.end(), p))
            continue;
        for (int g = 0; g < X.G->n; ++g)
            if (X.act[g][obs[j].base] == p) return {static_cast<int>(j), g};
    }
    throw verify_error("locate_orbit: point not covered by orbits");
}
}  // namespace detail

/// Levelwise Burnside data with restriction, additive transfer and
/// multiplicative norm actions along arbitrary equivariant maps, in the shape
/// bispan functoriality checking expects. A value at X holds one element per
/// orbit, over the stabilizer of the orbit base point.
struct TambaraFunctorOracle {
    GroupPtr G;
    bool grouplike = true;  // levels are rings, additively groups
    std::vector<std::vector<BurnsideElement>> level_values;  // seeds per class

    struct Value {
        std::vector<BurnsideElement> per_orbit;
    };

    /// Deterministic seeds at one level: the unit, the regular class, and a
    /// salted virtual mix.
    std::vector<BurnsideElement> level_battery(const std::vector<int>& H, int salt) const {
        const auto& emb = G->subgroup_group(H);
        auto unit = burnside_unit(emb.group);
        auto reg = burnside_class(coset_gset(emb.group, {emb.group->e}));
        auto mix = burnside_add(burnside_scale(Int(salt + 1), unit), burnside_neg(reg));
        return {unit, reg, mix};
    }

    std::vector<Value> battery(const GSet& X) const {
        auto obs = orbits(X);
        std::vector<Value> out(3);
        for (std::size_t i = 0; i < obs.size(); ++i) {
            auto seeds = level_battery(obs[i].stab, static_cast<int>(i));
            for (int j = 0; j < 3; ++j) out[j].per_orbit.push_back(seeds[j]);
        }
        return out;
    }

    Value act_r(const GSetMap& f, const Value& v) const {
        auto oa = orbits(f.src);
        auto ox = orbits(f.dst);
        require(v.per_orbit.size() == ox.size(), "act_r: value shape mismatch");
        Value out;
        for (const auto& o : oa) {
            auto [j, g] = detail::locate_orbit(ox, f.dst, f.f[o.base]);
            auto Kc = G->conjugate_subgroup(g, ox[j].stab);  // stab of f(base)
            auto w = conj_elem(G, ox[j].stab, g, v.per_orbit[j]);
            const auto& kemb = G->subgroup_group(Kc);
            auto r = restrict_b(kemb.group, sublist_positions(Kc, o.stab), w);
            out.per_orbit.push_back(rebrand(r, G->subgroup_group(o.stab).group));
        }
        return out;
    }

    Value act_t(const GSetMap& m, const Value& v) const {
        auto ox = orbits(m.src);
        auto ob = orbits(m.dst);
        require(v.per_orbit.size() == ox.size(), "act_t: value shape mismatch");
        Value out;
        for (const auto& o : ob)
            out.per_orbit.push_back(burnside_zero(G->subgroup_group(o.stab).group));
        for (std::size_t i = 0; i < ox.size(); ++i) {
            auto [j, g] = detail::locate_orbit(ob, m.dst, m.f[ox[i].base]);
            auto w = conj_elem(G, ox[i].stab, G->inv[g], v.per_orbit[i]);
            auto Hc = G->conjugate_subgroup(G->inv[g], ox[i].stab);
            const auto& kemb = G->subgroup_group(ob[j].stab);
            auto Hloc = sublist_positions(ob[j].stab, Hc);
            auto t = transfer(kemb.group, Hloc,
                              rebrand(w, kemb.group->subgroup_group(Hloc).group));
            out.per_orbit[j] = burnside_add(out.per_orbit[j], t);
        }
        return out;
    }

    Value act_n(const GSetMap& n, const Value& v) const {
        auto ox = orbits(n.src);
        auto ob = orbits(n.dst);
        require(v.per_orbit.size() == ox.size(), "act_n: value shape mismatch");
        Value out;
        for (const auto& o : ob)
            out.per_orbit.push_back(burnside_unit(G->subgroup_group(o.stab).group));
        for (std::size_t i = 0; i < ox.size(); ++i) {
            auto [j, g] = detail::locate_orbit(ob, n.dst, n.f[ox[i].base]);
            auto w = conj_elem(G, ox[i].stab, G->inv[g], v.per_orbit[i]);
            auto Hc = G->conjugate_subgroup(G->inv[g], ox[i].stab);
            const auto& kemb = G->subgroup_group(ob[j].stab);
            auto Hloc = sublist_positions(ob[j].stab, Hc);
            auto nm = norm_virtual(kemb.group, Hloc,
                                   rebrand(w, kemb.group->subgroup_group(Hloc).group));
            out.per_orbit[j] = burnside_mul(out.per_orbit[j], nm);
        }
        return out;
    }

    bool equal(const GSet& X, const Value& a, const Value& b) const {
        (void)X;
        return a.per_orbit == b.per_orbit;
    }

    /// Orbits of a disjoint union are the left orbits then the right orbits.
    Value combine(const GSet& A, const GSet& B, const Value& a, const Value& b) const {
        (void)A;
        (void)B;
        Value out = a;
        out.per_orbit.insert(out.per_orbit.end(), b.per_orbit.begin(),
                             b.per_orbit.end());
        return out;
    }
};

inline TambaraFunctorOracle as_tambara_oracle(const GroupPtr& G) {
    TambaraFunctorOracle F;
    F.G = G;
    for (const auto& H : G->subgroup_classes())
        F.level_values.push_back(F.level_battery(H, 0));
    return F;
}

}  // namespace eqalg
