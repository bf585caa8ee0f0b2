#pragma once

#include <cassert>
#include <unordered_map>

#include "eqalg/base.hpp"

namespace eqalg {

struct FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group as an explicit multiplication table on {0..n-1}.
/// Group axioms are checked on construction (make_group). All derived data
/// (subgroups, conjugacy classes of subgroups, quotients) is cached lazily;
/// instances are immutable after construction and shared via GroupPtr.
struct FiniteGroup {
    std::string name;
    int n = 0;
    std::vector<std::vector<int>> mul;        // mul[a][b] = a*b
    int e = 0;                                // identity
    std::vector<int> inv;                     // inv[a]
    std::vector<std::vector<int>> perm_gens;  // optional generators, one-line notation

    int op(int a, int b) const { return mul[a][b]; }
    int inverse(int a) const { return inv[a]; }
    int conj(int g, int a) const { return mul[mul[g][a]][inv[g]]; }  // g a g^-1

    // --- subgroup machinery (lazy, cached) ---

    /// All subgroups as sorted element lists, in canonical order
    /// (by order, then lexicographically).
    const std::vector<std::vector<int>>& subgroups() const;

    /// Conjugacy classes of subgroups. Class representatives are the
    /// lexicographically least members; classes are ordered by subgroup
    /// order, ties broken by the representative element list.
    const std::vector<std::vector<int>>& subgroup_classes() const;

    /// Index into subgroup_classes() of the class of H (sorted element list).
    int class_of(const std::vector<int>& H) const;

    int num_classes() const { return static_cast<int>(subgroup_classes().size()); }

    /// Short deterministic label for a subgroup class, e.g. "H2_o3".
    std::string class_label(int c) const {
        return "H" + std::to_string(c) + "_o" +
               std::to_string(subgroup_classes()[c].size());
    }

    std::vector<int> normalizer(const std::vector<int>& H) const;
    std::vector<int> conjugate_subgroup(int g, const std::vector<int>& H) const;
    bool is_normal(const std::vector<int>& H) const;

    /// Representatives g of the double cosets K\G/H, in order of least member.
    std::vector<int> double_cosets(const std::vector<int>& K,
                                   const std::vector<int>& H) const;

    std::vector<int> closure(std::vector<int> gens) const;

    /// A small generating sequence (greedy; empty for the trivial group).
    std::vector<int> generating_set() const;

    struct Embedded {
        GroupPtr group;          // H as a group in its own right
        std::vector<int> embed;  // embed[i] = corresponding element of the parent
    };
    /// H (sorted element list) repackaged as a standalone FiniteGroup.
    const Embedded& subgroup_group(const std::vector<int>& H) const;

    struct Quotient {
        GroupPtr group;
        std::vector<int> proj;  // proj[g] = image coset index
    };
    /// G/N for normal N; cosets are ordered by least member.
    const Quotient& quotient_group(const std::vector<int>& N) const;

  private:
    mutable std::vector<std::vector<int>> subgroups_;
    mutable std::vector<std::vector<int>> classes_;
    mutable std::map<std::vector<int>, int> class_of_;
    mutable std::map<std::vector<int>, Embedded> embedded_;
    mutable std::map<std::vector<int>, Quotient> quotients_;
};

inline GroupPtr make_group(std::string name, std::vector<std::vector<int>> mul,
                           std::vector<std::vector<int>> perm_gens = {}) {
    auto g = std::make_shared<FiniteGroup>();
    g->name = std::move(name);
    g->n = static_cast<int>(mul.size());
    require(g->n >= 1, "group: empty multiplication table");
    for (const auto& row : mul) {
        require(static_cast<int>(row.size()) == g->n, "group: ragged table");
        for (int v : row) require(0 <= v && v < g->n, "group: entry out of range");
    }
    g->mul = std::move(mul);
    // identity
    int id = -1;
    for (int a = 0; a < g->n; ++a) {
        bool ok = true;
        for (int b = 0; b < g->n; ++b)
            if (g->mul[a][b] != b || g->mul[b][a] != b) { ok = false; break; }
        if (ok) { id = a; break; }
    }
    require(id >= 0, "group: no identity");
    g->e = id;
    // inverses
    g->inv.assign(g->n, -1);
    for (int a = 0; a < g->n; ++a) {
        for (int b = 0; b < g->n; ++b)
            if (g->mul[a][b] == id && g->mul[b][a] == id) { g->inv[a] = b; break; }
        require(g->inv[a] >= 0, "group: missing inverse");
    }
    // associativity
    for (int a = 0; a < g->n; ++a)
        for (int b = 0; b < g->n; ++b)
            for (int c = 0; c < g->n; ++c)
                require(g->mul[g->mul[a][b]][c] == g->mul[a][g->mul[b][c]],
                        "group: not associative");
    g->perm_gens = std::move(perm_gens);
    return g;
}

// --- builders ---

inline GroupPtr trivial_group() {
    return make_group("C1", {{0}});
}

inline GroupPtr cyclic_group(int k) {
    require(k >= 1, "cyclic_group: k >= 1");
    std::vector<std::vector<int>> mul(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) mul[a][b] = (a + b) % k;
    std::vector<std::vector<int>> gens;
    if (k > 1) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = (i + 1) % k;
        gens.push_back(c);
    }
    return make_group("C" + std::to_string(k), std::move(mul), std::move(gens));
}

/// Symmetric group on {0..k-1}; elements are the permutations in
/// lexicographic one-line order, product (p*q)(i) = p(q(i)).
inline GroupPtr symmetric_group(int k) {
    require(k >= 0 && k <= 6, "symmetric_group: 0 <= k <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < n; ++i) idx[perms[i]] = i;
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> c(k);
            for (int i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
            mul[a][b] = idx[c];
        }
    std::vector<std::vector<int>> gens;
    if (k >= 2) {
        std::vector<int> t(k);
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[0], t[1]);
        gens.push_back(t);
        if (k >= 3) {
            std::vector<int> c(k);
            for (int i = 0; i < k; ++i) c[i] = (i + 1) % k;
            gens.push_back(c);
        }
    }
    return make_group("S" + std::to_string(k), std::move(mul), std::move(gens));
}

/// Dihedral group of order 2k: elements 0..k-1 are rotations r^i,
/// k..2k-1 are reflections s r^i.
inline GroupPtr dihedral_group(int k) {
    require(k >= 1, "dihedral_group: k >= 1");
    int n = 2 * k;
    auto rot = [k](int x) { return x % k; };
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            bool fa = a >= k, fb = b >= k;
            int ia = rot(a), ib = rot(b);
            // (s^fa r^ia)(s^fb r^ib) = s^(fa+fb) r^(ib + (-1)^fb ia)
            int i = fb ? (ib - ia % k + k) % k : (ia + ib) % k;
            mul[a][b] = (fa != fb ? k : 0) + i;
        }
    return make_group("D" + std::to_string(k), std::move(mul));
}

inline GroupPtr product_group(const GroupPtr& A, const GroupPtr& B) {
    int n = A->n * B->n;
    check_capacity(n <= 512, "product_group: order cap exceeded");
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int a1 = a / B->n, a2 = a % B->n, b1 = b / B->n, b2 = b % B->n;
            mul[a][b] = A->mul[a1][b1] * B->n + B->mul[a2][b2];
        }
    return make_group(A->name + "x" + B->name, std::move(mul));
}

// --- subgroup machinery implementation ---

inline std::vector<int> FiniteGroup::closure(std::vector<int> gens) const {
    std::vector<char> in(n, 0);
    std::vector<int> elems{e};
    in[e] = 1;
    for (int g : gens)
        if (!in[g]) { in[g] = 1; elems.push_back(g); }
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t sz = elems.size();
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = 0; j < sz; ++j) {
                int p = mul[elems[i]][elems[j]];
                if (!in[p]) {
                    in[p] = 1;
                    elems.push_back(p);
                    grew = true;
                }
            }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

inline const std::vector<std::vector<int>>& FiniteGroup::subgroups() const {
    if (!subgroups_.empty()) return subgroups_;
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> work{closure({})};
    found.insert(work[0]);
    while (!work.empty()) {
        auto H = work.back();
        work.pop_back();
        for (int g = 0; g < n; ++g) {
            if (std::binary_search(H.begin(), H.end(), g)) continue;
            auto gens = H;
            gens.push_back(g);
            auto K = closure(std::move(gens));
            if (found.insert(K).second) work.push_back(K);
        }
    }
    subgroups_.assign(found.begin(), found.end());
    std::stable_sort(subgroups_.begin(), subgroups_.end(),
                     [](const auto& a, const auto& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a < b;
                     });
    return subgroups_;
}

inline std::vector<int> FiniteGroup::conjugate_subgroup(
    int g, const std::vector<int>& H) const {
    std::vector<int> out;
    out.reserve(H.size());
    for (int h : H) out.push_back(conj(g, h));
    std::sort(out.begin(), out.end());
    return out;
}

inline const std::vector<std::vector<int>>& FiniteGroup::subgroup_classes() const {
    if (!classes_.empty()) return classes_;
    const auto& subs = subgroups();
    std::set<std::vector<int>> seen;
    for (const auto& H : subs) {
        if (seen.count(H)) continue;
        std::vector<int> least = H;
        std::vector<std::vector<int>> orbit;
        for (int g = 0; g < n; ++g) {
            auto C = conjugate_subgroup(g, H);
            if (C < least) least = C;
            orbit.push_back(std::move(C));
        }
        classes_.push_back(least);
        int id = static_cast<int>(classes_.size()) - 1;
        for (auto& C : orbit) {
            if (seen.insert(C).second) class_of_[C] = id;
        }
        class_of_[least] = id;
    }
    // classes were discovered in canonical subgroup order, which already
    // sorts by (order, least representative); re-sort defensively.
    std::vector<int> perm(classes_.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (classes_[a].size() != classes_[b].size())
            return classes_[a].size() < classes_[b].size();
        return classes_[a] < classes_[b];
    });
    std::vector<std::vector<int>> sorted;
    std::vector<int> newid(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        sorted.push_back(classes_[perm[i]]);
        newid[perm[i]] = static_cast<int>(i);
    }
    classes_ = std::move(sorted);
    for (auto& kv : class_of_) kv.second = newid[kv.second];
    return classes_;
}

inline int FiniteGroup::class_of(const std::vector<int>& H) const {
    subgroup_classes();
    auto it = class_of_.find(H);
    require(it != class_of_.end(), "class_of: not a subgroup of this group");
    return it->second;
}

inline std::vector<int> FiniteGroup::normalizer(const std::vector<int>& H) const {
    std::vector<int> out;
    for (int g = 0; g < n; ++g)
        if (conjugate_subgroup(g, H) == H) out.push_back(g);
    return out;
}

inline bool FiniteGroup::is_normal(const std::vector<int>& H) const {
    return static_cast<int>(normalizer(H).size()) == n;
}

inline std::vector<int> FiniteGroup::double_cosets(
    const std::vector<int>& K, const std::vector<int>& H) const {
    std::vector<char> seen(n, 0);
    std::vector<int> reps;
    for (int g = 0; g < n; ++g) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int k : K)
            for (int h : H) seen[mul[mul[k][g]][h]] = 1;
    }
    return reps;
}

inline std::vector<int> FiniteGroup::generating_set() const {
    std::vector<int> gens;
    auto cur = closure({});
    for (int g = 0; g < n && static_cast<int>(cur.size()) < n; ++g) {
        if (std::binary_search(cur.begin(), cur.end(), g)) continue;
        gens.push_back(g);
        cur = closure(gens);
    }
    return gens;
}

inline const FiniteGroup::Embedded& FiniteGroup::subgroup_group(
    const std::vector<int>& H) const {
    auto it = embedded_.find(H);
    if (it != embedded_.end()) return it->second;
    int k = static_cast<int>(H.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < k; ++i) pos[H[i]] = i;
    std::vector<std::vector<int>> tab(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int p = mul[H[i]][H[j]];
            require(pos[p] >= 0, "subgroup_group: not closed");
            tab[i][j] = pos[p];
        }
    Embedded emb;
    emb.group = make_group(name + "<" + std::to_string(k) + ">", std::move(tab));
    emb.embed = H;
    return embedded_.emplace(H, std::move(emb)).first->second;
}

inline const FiniteGroup::Quotient& FiniteGroup::quotient_group(
    const std::vector<int>& N) const {
    auto it = quotients_.find(N);
    if (it != quotients_.end()) return it->second;
    require(is_normal(N), "quotient_group: subgroup not normal");
    std::vector<int> coset(n, -1);
    std::vector<int> reps;
    for (int g = 0; g < n; ++g) {
        if (coset[g] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(g);
        for (int x : N) coset[mul[g][x]] = c;
    }
    int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> tab(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) tab[a][b] = coset[mul[reps[a]][reps[b]]];
    Quotient out;
    out.group = make_group(name + "/N" + std::to_string((int)N.size()), std::move(tab));
    out.proj = std::move(coset);
    return quotients_.emplace(N, std::move(out)).first->second;
}

// --- homomorphisms ---

inline bool is_hom(const FiniteGroup& G, const FiniteGroup& H,
                   const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != G.n) return false;
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            if (f[G.mul[a][b]] != H.mul[f[a]][f[b]]) return false;
    return true;
}

/// All homomorphisms G -> H, enumerated by generator images and verified
/// against the full multiplication table. Deterministic order.
inline std::vector<std::vector<int>> all_homs(const FiniteGroup& G,
                                              const FiniteGroup& H) {
    auto gens = G.generating_set();
    int k = static_cast<int>(gens.size());
    // express every element as (previous element) * (generator)
    std::vector<std::pair<int, int>> word(G.n, {-1, -1});
    std::vector<int> order{G.e};
    std::vector<char> seen(G.n, 0);
    seen[G.e] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int j = 0; j < k; ++j) {
            int nx = G.mul[order[i]][gens[j]];
            if (!seen[nx]) {
                seen[nx] = 1;
                word[nx] = {order[i], j};
                order.push_back(nx);
            }
        }
    require(static_cast<int>(order.size()) == G.n, "all_homs: generators do not generate");

    std::vector<std::vector<int>> homs;
    std::vector<int> img(k, 0);
    while (true) {
        std::vector<int> f(G.n, -1);
        f[G.e] = H.e;
        for (std::size_t i = 1; i < order.size(); ++i) {
            auto [prev, j] = word[order[i]];
            f[order[i]] = H.mul[f[prev]][img[j]];
        }
        if (is_hom(G, H, f)) homs.push_back(f);
        // next image tuple
        int pos = k - 1;
        while (pos >= 0 && img[pos] == H.n - 1) img[pos--] = 0;
        if (pos < 0) break;
        ++img[pos];
    }
    return homs;
}

inline bool is_injective_map(const std::vector<int>& f, int target_size) {
    std::vector<char> hit(target_size, 0);
    for (int v : f) {
        if (hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

inline std::vector<std::vector<int>> all_isos(const FiniteGroup& G,
                                              const FiniteGroup& H) {
    std::vector<std::vector<int>> out;
    if (G.n != H.n) return out;
    for (auto& f : all_homs(G, H))
        if (is_injective_map(f, H.n)) out.push_back(f);
    return out;
}

/// Canonical serialization used for content hashing and interchange.
inline std::string serialize_group(const FiniteGroup& G) {
    std::string s = "schema: group/1\n";
    s += "name: " + G.name + "\n";
    s += "order: " + std::to_string(G.n) + "\n";
    s += "mul:\n";
    for (const auto& row : G.mul) s += join_ints(row) + "\n";
    if (!G.perm_gens.empty()) {
        s += "gens:\n";
        for (const auto& p : G.perm_gens) s += join_ints(p) + "\n";
    }
    return s;
}

inline std::string group_hash(const FiniteGroup& G) {
    return hash_hex(fnv1a(serialize_group(G)));
}

}  // namespace eqalg
