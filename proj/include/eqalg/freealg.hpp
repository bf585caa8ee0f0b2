#pragma once

#include "eqalg/tambara.hpp"

namespace eqalg {

/// One-line permutation per element index of a symmetric group built by
/// lexicographic enumeration; re-derived and verified against the table, so
/// a convention drift fails loudly instead of mislabeling subgroups.
inline std::vector<std::vector<int>> symmetric_perm_model(const GroupPtr& Sk, int k) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    require(static_cast<int>(perms.size()) == Sk->n,
            "symmetric_perm_model: order mismatch");
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < Sk->n; ++i) idx[perms[i]] = i;
    std::vector<int> c(k);
    for (int a = 0; a < Sk->n; ++a)
        for (int b = 0; b < Sk->n; ++b) {
            for (int i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
            require(Sk->mul[a][b] == idx[c], "symmetric_perm_model: table mismatch");
        }
    return perms;
}

/// X^n / Sigma_n with the diagonal action; points are multisets encoded as
/// non-decreasing n-tuples of X points. Degree zero is the one-point set.
inline GSet symmetric_power(const GSet& X, int n) {
    require(n >= 0, "symmetric_power: negative degree");
    if (n == 0) return trivial_gset(X.G, 1);
    std::vector<std::vector<int>> tuples;
    if (X.n > 0) {
        std::vector<int> t(n, 0);
        for (;;) {
            tuples.push_back(t);
            check_capacity(static_cast<int>(tuples.size()) <= kMaxPoints,
                           "symmetric_power: point cap exceeded");
            int i = n - 1;
            while (i >= 0 && t[i] == X.n - 1) --i;
            if (i < 0) break;
            int v = t[i] + 1;
            for (int j = i; j < n; ++j) t[j] = v;
        }
    }
    std::map<std::vector<int>, int> idx;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        idx[tuples[i]] = static_cast<int>(i);
    int m = static_cast<int>(tuples.size());
    std::vector<std::vector<int>> act(X.G->n, std::vector<int>(m));
    for (int g = 0; g < X.G->n; ++g)
        for (int i = 0; i < m; ++i) {
            std::vector<int> s(n);
            for (int j = 0; j < n; ++j) s[j] = X.act[g][tuples[i][j]];
            std::sort(s.begin(), s.end());
            act[g][i] = idx[s];
        }
    GSet Y;
    Y.G = X.G;
    Y.n = m;
    Y.act = std::move(act);
    return Y;
}

/// The degree-n piece computed the long way around: inflate X to the
/// point-stabilizer subgroup of Sigma_n x G, push forward multiplicatively
/// to Sigma_n x G, then take permutation-factor orbits back down to G.
/// Degree zero is the one-point set by the empty-group convention.
inline GSet pipeline_sub_nm_inf(const GSet& X, int n) {
    require(n >= 0, "pipeline_sub_nm_inf: negative degree");
    const GroupPtr& G = X.G;
    if (n == 0) return trivial_gset(G, 1);
    Int sections = 1;
    for (int i = 0; i < n; ++i) sections *= X.n;
    check_capacity(sections <= kMaxPoints,
                   "pipeline_sub_nm_inf: section count exceeds point cap");
    auto Sn = symmetric_group(n);
    auto perms = symmetric_perm_model(Sn, n);
    auto P = product_group(Sn, G);
    std::vector<int> H;  // stabilizer of the last letter, times G
    for (int s = 0; s < Sn->n; ++s) {
        if (perms[s][n - 1] != n - 1) continue;
        for (int g = 0; g < G->n; ++g) H.push_back(s * G->n + g);
    }
    std::sort(H.begin(), H.end());
    const auto& emb = P->subgroup_group(H);
    std::vector<int> phi(emb.group->n);
    for (int i = 0; i < emb.group->n; ++i) phi[i] = emb.embed[i] % G->n;
    GSet XH = restrict_along(emb.group, phi, X);
    GSet Nm = norm_effective(P, H, XH);
    std::vector<int> psi(P->n);
    for (int p = 0; p < P->n; ++p) psi[p] = p % G->n;
    return deflate_along(G, psi, Nm, DeflateMode::quotient);
}

/// Per-degree comparison of the two computations of the free-algebra graded
/// pieces. Verdicts come from isomorphism testing, never from construction.
struct SymPowerReport {
    GSet input;
    int max_degree = 0;
    std::vector<GSet> direct;
    std::vector<GSet> pipeline;
    std::vector<bool> agree;
    bool pass = true;
};

inline SymPowerReport free_underlying(const GSet& X, int max_degree) {
    require(max_degree >= 0, "free_underlying: negative degree bound");
    SymPowerReport r;
    r.input = X;
    r.max_degree = max_degree;
    for (int n = 0; n <= max_degree; ++n) {
        r.direct.push_back(symmetric_power(X, n));
        r.pipeline.push_back(pipeline_sub_nm_inf(X, n));
        bool ok = gset_iso(r.direct.back(), r.pipeline.back());
        r.agree.push_back(ok);
        r.pass = r.pass && ok;
    }
    return r;
}

/// Iso-class counts of bispans from the generator orbit to the endpoint
/// orbit within the apex cap. by_degree grades every class by the fiber size
/// of the transfer apex over the endpoint; monomial counts the classes whose
/// transfer leg is an isomorphism, graded by the norm-apex fiber size. The
/// monomial grading agrees with the graded free-algebra report in degrees
/// 0 and 1, and in every degree over the trivial group; from degree 2 on the
/// quotient power identifies monomial shapes this census keeps separate.
struct FreeCensus {
    GroupPtr G;
    int gen_class = 0;
    int end_class = 0;
    int cap = 0;
    std::vector<Int> by_degree;
    std::vector<Int> monomial;
};

inline FreeCensus free_tambara_census(const GroupPtr& G, int gen_class,
                                      int end_class, int cap) {
    FreeCensus out;
    out.G = G;
    out.gen_class = gen_class;
    out.end_class = end_class;
    out.cap = cap;
    GSet A = orbit_gset(G, gen_class);
    GSet B = orbit_gset(G, end_class);
    auto classes = bispan_enumerate(A, B, gset_bispan_spec(), cap);
    auto bump = [](std::vector<Int>& v, int d) {
        if (static_cast<int>(v.size()) <= d) v.resize(d + 1, Int(0));
        v[d] += 1;
    };
    for (const auto& u : classes) {
        int ysz = u.m.src.n;
        require(ysz % B.n == 0, "free_tambara_census: uneven transfer fibers");
        bump(out.by_degree, ysz / B.n);
        bool iso = ysz == B.n;
        if (iso) {
            std::vector<char> hit(B.n, 0);
            for (int y = 0; y < ysz; ++y) hit[u.m.f[y]] = 1;
            for (char h : hit) iso = iso && h;
        }
        if (iso) {
            require(u.n.src.n % B.n == 0, "free_tambara_census: uneven norm fibers");
            bump(out.monomial, u.n.src.n / B.n);
        }
    }
    return out;
}

}  // namespace eqalg
