#pragma once

#include <chrono>
#include <cstdio>

#include "eqalg/doc.hpp"
#include "eqalg/freealg.hpp"

namespace eqalg {

// The acceptance battery: ten independent checks, each anchored to a known
// value or an independent construction rather than to the code under test.
// `small` trims the expensive enumerations to a subset that still exercises
// every code path; `full` runs each check at its stated scope.

enum class Battery { small, full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline int matrix_rank(const std::vector<std::vector<Int>>& M) {
    if (M.empty()) return 0;
    std::vector<std::vector<Rat>> R(M.size(), std::vector<Rat>(M[0].size()));
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M[i].size(); ++j) R[i][j] = Rat(M[i][j]);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < R[0].size() && rank < R.size(); ++col) {
        std::size_t piv = rank;
        while (piv < R.size() && R[piv][col] == 0) ++piv;
        if (piv == R.size()) continue;
        std::swap(R[piv], R[rank]);
        for (std::size_t r = 0; r < R.size(); ++r) {
            if (r == rank || R[r][col] == 0) continue;
            Rat q = R[r][col] / R[rank][col];
            for (std::size_t j = col; j < R[r].size(); ++j) R[r][j] -= q * R[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

/// coset reps (least-member order) and the element -> coset index table.
struct CosetTable {
    std::vector<int> reps;
    std::vector<int> of_elem;
};

inline CosetTable coset_table(const GroupPtr& G, const std::vector<int>& J) {
    CosetTable t;
    t.of_elem.assign(G->n, -1);
    for (int g = 0; g < G->n; ++g) {
        if (t.of_elem[g] >= 0) continue;
        int c = static_cast<int>(t.reps.size());
        t.reps.push_back(g);
        for (int h : J) t.of_elem[G->mul[g][h]] = c;
    }
    return t;
}

inline std::vector<int> sorted_intersection(const std::vector<int>& A,
                                            const std::vector<int>& B) {
    std::vector<int> out;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                          std::back_inserter(out));
    return out;
}

// --- criterion bodies; each returns pass + detail ---

inline CriterionResult rank_anchor() {
    auto S2 = symmetric_group(2);
    auto T = marks_table(S2);
    int rank = matrix_rank(T->M);
    CriterionResult r;
    r.pass = rank == 2;
    r.detail = "marks matrix of the order-2 symmetric group has rank " +
               std::to_string(rank);
    return r;
}

inline std::vector<GroupPtr> span_battery_groups() {
    return {cyclic_group(2), cyclic_group(3), symmetric_group(3)};
}

inline std::vector<GroupPtr> census_battery_groups() {
    return {cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)};
}

inline CriterionResult span_laws(Battery b) {
    CriterionResult r;
    auto spec = gset_triple();
    long triples = 0, units = 0;
    for (const auto& G : span_battery_groups()) {
        int cap = (b == Battery::small && G->n > 3) ? 3 : 4;
        std::vector<GSet> E;
        for (int c = 0; c < G->num_classes(); ++c) E.push_back(orbit_gset(G, c));
        int k = static_cast<int>(E.size());
        std::vector<std::vector<std::vector<SpanHomClass>>> homs(
            k, std::vector<std::vector<SpanHomClass>>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) homs[i][j] = hom_enumerate(E[i], E[j], spec, cap);

        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (const auto& s : homs[i][j]) {
                    ++units;
                    if (!span_iso(compose_spans(identity_span(spec, E[i]), s.rep), s.rep) ||
                        !span_iso(compose_spans(s.rep, identity_span(spec, E[j])), s.rep)) {
                        r.detail = "unitality fails over " + G->name + " between orbits " +
                                   std::to_string(i) + " and " + std::to_string(j);
                        return r;
                    }
                }

        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const auto& Hij = homs[i][j];
                if (Hij.empty()) continue;
                for (int kk = 0; kk < k; ++kk) {
                    const auto& Hjk = homs[j][kk];
                    if (Hjk.empty()) continue;
                    std::vector<std::vector<GSetSpan>> ST;
                    ST.reserve(Hij.size());
                    for (const auto& s : Hij) {
                        std::vector<GSetSpan> row;
                        row.reserve(Hjk.size());
                        for (const auto& t : Hjk) row.push_back(compose_spans(s.rep, t.rep));
                        ST.push_back(std::move(row));
                    }
                    for (int l = 0; l < k; ++l) {
                        const auto& Hkl = homs[kk][l];
                        if (Hkl.empty()) continue;
                        std::vector<std::vector<GSetSpan>> TU;
                        TU.reserve(Hjk.size());
                        for (const auto& t : Hjk) {
                            std::vector<GSetSpan> row;
                            row.reserve(Hkl.size());
                            for (const auto& u : Hkl)
                                row.push_back(compose_spans(t.rep, u.rep));
                            TU.push_back(std::move(row));
                        }
                        for (std::size_t si = 0; si < Hij.size(); ++si)
                            for (std::size_t ti = 0; ti < Hjk.size(); ++ti)
                                for (std::size_t ui = 0; ui < Hkl.size(); ++ui) {
                                    ++triples;
                                    auto lhs = compose_spans(ST[si][ti], Hkl[ui].rep);
                                    auto rhs = compose_spans(Hij[si].rep, TU[ti][ui]);
                                    if (!span_iso(lhs, rhs)) {
                                        r.detail =
                                            "associativity fails over " + G->name +
                                            " at orbit chain " + std::to_string(i) + "," +
                                            std::to_string(j) + "," + std::to_string(kk) +
                                            "," + std::to_string(l);
                                        return r;
                                    }
                                }
                    }
                }
            }
    }
    r.pass = true;
    r.detail = std::to_string(triples) + " composable triples associative, " +
               std::to_string(units) + " spans unital";
    return r;
}

inline CriterionResult span_factorization(Battery b) {
    CriterionResult r;
    auto spec = gset_triple();
    long spans = 0, twists = 0;
    for (const auto& G : span_battery_groups()) {
        int cap = (b == Battery::small && G->n > 3) ? 3 : 4;
        std::vector<GSet> E;
        for (int c = 0; c < G->num_classes(); ++c) E.push_back(orbit_gset(G, c));
        for (const auto& X : E)
            for (const auto& Y : E)
                for (const auto& cls : hom_enumerate(X, Y, spec, cap)) {
                    ++spans;
                    auto [bw, fw] = factor_span(cls.rep);
                    if (!is_bijective(bw.fwd) || !is_bijective(fw.back)) {
                        r.detail = "factor parts leave their classes over " + G->name;
                        return r;
                    }
                    if (!span_iso(compose_spans(bw, fw), cls.rep)) {
                        r.detail = "factorization does not recompose over " + G->name;
                        return r;
                    }
                    // every relabelling of the middle object gives another
                    // factorization; all of them differ from (bw, fw) by the
                    // invertible span of the relabelling, so the middle
                    // object and both parts are pinned up to iso
                    for (const auto& rel : iso_maps(cls.rep.apex(), cls.rep.apex())) {
                        ++twists;
                        auto rel_span = GSetSpan{spec, identity_map(rel.src), rel};
                        auto bw2 = compose_spans(bw, rel_span);
                        auto fw2 = GSetSpan{spec, rel, cls.rep.fwd};
                        if (!span_iso(compose_spans(bw2, fw2), cls.rep)) {
                            r.detail = "twisted factorization loses the span over " +
                                       G->name;
                            return r;
                        }
                    }
                }
    }
    r.pass = true;
    r.detail = std::to_string(spans) + " spans factor uniquely, " +
               std::to_string(twists) + " middle relabellings checked";
    return r;
}

inline CriterionResult distributivity(Battery b) {
    CriterionResult r;
    int cap = b == Battery::small ? 2 : 3;
    int test_cap = b == Battery::small ? 2 : 3;
    long diagrams = 0;
    for (const auto& G : {cyclic_group(2), cyclic_group(3)}) {
        auto gsets = enumerate_gsets(G, cap);
        for (const auto& A : gsets)
            for (const auto& B : gsets)
                for (const auto& X : gsets)
                    for (const auto& n : all_maps(A, B))
                        for (const auto& m : all_maps(X, A)) {
                            ++diagrams;
                            auto d = dependent_product(n, m);
                            auto c = verify_distributivity_diagram(d, test_cap);
                            if (!c.ok) {
                                r.detail = "universal property fails over " + G->name +
                                           " with |X|,|A|,|B| = " + std::to_string(X.n) +
                                           "," + std::to_string(A.n) + "," +
                                           std::to_string(B.n) + ": " + c.detail;
                                return r;
                            }
                        }
    }
    r.pass = true;
    r.detail = std::to_string(diagrams) + " diagrams pass the universal property";
    return r;
}

inline CriterionResult norm_equivalence() {
    CriterionResult r;
    long norms = 0;
    for (const auto& G : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
        for (int c = 0; c < G->num_classes(); ++c) {
            const auto& H = G->subgroup_classes()[c];
            if (G->n / static_cast<int>(H.size()) > 3) continue;
            const auto& emb = G->subgroup_group(H);
            for (const auto& X : enumerate_gsets(emb.group, 4)) {
                ++norms;
                auto lhs = norm_virtual(G, H, burnside_class(X));
                auto rhs = burnside_class(norm_effective(G, H, X));
                if (!(lhs == rhs)) {
                    r.detail = "virtual and effective norms disagree over " + G->name +
                               " from class " + G->class_label(c) + " on " +
                               std::to_string(X.n) + " points";
                    return r;
                }
            }
        }
    }
    r.pass = true;
    r.detail = std::to_string(norms) + " norms agree with the section-set oracle, "
               "all marks systems integral";
    return r;
}

inline CriterionResult mackey_law() {
    CriterionResult r;
    auto G = symmetric_group(3);
    auto spec = gset_triple();
    long pairs = 0;
    for (int cH = 0; cH < G->num_classes(); ++cH)
        for (int cK = 0; cK < G->num_classes(); ++cK) {
            ++pairs;
            auto composite =
                compose_spans(transfer_span(G, cH), restriction_span(G, cK));
            // direct decomposition: one component per double coset HgK, with
            // apex G/(H cap gKg^-1), legs x |-> xH and x |-> xgK
            const auto& H = G->subgroup_classes()[cH];
            const auto& K = G->subgroup_classes()[cK];
            auto tH = coset_table(G, H);
            auto tK = coset_table(G, K);
            GSet apex = empty_gset(G);
            std::vector<int> to_h, to_k;
            for (int g : G->double_cosets(H, K)) {
                auto J = sorted_intersection(H, G->conjugate_subgroup(g, K));
                auto tJ = coset_table(G, J);
                for (int rep : tJ.reps) {
                    to_h.push_back(tH.of_elem[rep]);
                    to_k.push_back(tK.of_elem[G->mul[rep][g]]);
                }
                apex = disjoint_union(apex, coset_gset(G, J));
            }
            auto predicted = make_gset_span(
                spec, make_map(apex, orbit_gset(G, cH), std::move(to_h)),
                make_map(apex, orbit_gset(G, cK), std::move(to_k)));
            if (!span_iso(composite, predicted)) {
                r.detail = "double-coset decomposition disagrees for classes " +
                           G->class_label(cH) + ", " + G->class_label(cK);
                return r;
            }
        }
    r.pass = true;
    r.detail = std::to_string(pairs) + " subgroup pairs decompose by double cosets";
    return r;
}

inline CriterionResult chi_census() {
    CriterionResult r;
    for (const auto& G : census_battery_groups())
        for (int n = 0; n <= 4; ++n) {
            auto c = sigma_classes(G, n);
            if (!c.match()) {
                r.detail = G->name + " at " + std::to_string(n) + " points: " +
                           std::to_string(c.iso_classes) + " iso classes vs " +
                           std::to_string(c.hom_classes) + " conjugacy classes";
                return r;
            }
        }
    r.pass = true;
    r.detail = "iso-class and permutation-representation counts agree up to 4 points";
    return r;
}

inline CriterionResult tambara_functoriality(Battery b) {
    CriterionResult r;
    auto G = cyclic_group(2);
    auto spec = gset_bispan_spec();
    int cap = b == Battery::small ? 3 : 4;
    auto oracle = as_tambara_oracle(G);
    auto c = check_functoriality(oracle, spec, G, cap);
    if (!c.ok) {
        r.detail = c.detail;
        return r;
    }
    // rewrite confluence: both normalization orders give the same composite
    long pairs = 0;
    std::vector<GSet> E;
    for (int cls = 0; cls < G->num_classes(); ++cls) E.push_back(orbit_gset(G, cls));
    for (const auto& A : E)
        for (const auto& B : E) {
            auto us = bispan_enumerate(A, B, spec, cap);
            for (const auto& C : E) {
                auto vs = bispan_enumerate(B, C, spec, cap);
                for (const auto& u : us)
                    for (const auto& v : vs) {
                        ++pairs;
                        if (!bispan_iso(compose_bispans(u, v, false),
                                        compose_bispans(u, v, true))) {
                            r.detail = "normalization order changes a composite with "
                                       "apices " +
                                       std::to_string(u.n.src.n) + "," +
                                       std::to_string(v.n.src.n);
                            return r;
                        }
                    }
            }
        }
    r.pass = true;
    r.detail = "oracle functorial and rewriting confluent on " + std::to_string(pairs) +
               " composable pairs";
    return r;
}

inline CriterionResult free_algebra() {
    CriterionResult r;
    long reports = 0;
    for (const auto& G : span_battery_groups())
        for (const auto& X : enumerate_gsets(G, 3)) {
            ++reports;
            auto rep = free_underlying(X, 3);
            if (!rep.pass) {
                int bad = 0;
                while (rep.agree[bad]) ++bad;
                r.detail = "pipeline and symmetric power disagree over " + G->name +
                           " on " + std::to_string(X.n) + " points at degree " +
                           std::to_string(bad);
                return r;
            }
        }
    r.pass = true;
    r.detail = std::to_string(reports) +
               " inputs match the symmetric power in every degree up to 3";
    return r;
}

inline CriterionResult pullback_sanity() {
    CriterionResult r;
    for (const auto& G : census_battery_groups()) {
        auto BG = one_object_groupoid(G);
        auto pt = point_groupoid();
        auto f = make_functor(pt, BG, {0}, {BG->idm[0]});
        auto sq = iso_comma_pullback(f, f);
        bool discrete = sq.apex->nobj == G->n && sq.apex->nmor() == G->n;
        if (!discrete) {
            r.detail = "point self-intersection over " + G->name + " has " +
                       std::to_string(sq.apex->nobj) + " objects and " +
                       std::to_string(sq.apex->nmor()) + " morphisms, expected " +
                       std::to_string(G->n) + " of each";
            return r;
        }
        // faithful-class stability on all pairs of subgroup inclusions
        std::vector<std::pair<GroupoidMap, GroupoidMap>> cospans;
        for (int cH = 0; cH < G->num_classes(); ++cH)
            for (int cK = 0; cK < G->num_classes(); ++cK) {
                const auto& embH = G->subgroup_group(G->subgroup_classes()[cH]);
                const auto& embK = G->subgroup_group(G->subgroup_classes()[cK]);
                cospans.emplace_back(
                    make_functor(one_object_groupoid(embH.group), BG, {0}, embH.embed),
                    make_functor(one_object_groupoid(embK.group), BG, {0}, embK.embed));
            }
        auto c = verify_triple_stability(orbital_triple(), cospans);
        if (!c.ok) {
            r.detail = "faithful class not stable over " + G->name + ": " + c.detail;
            return r;
        }
    }
    r.pass = true;
    r.detail = "point pullbacks discrete of group order; faithfulness stable "
               "under iso-comma";
    return r;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(Battery b) {
    using clock = std::chrono::steady_clock;
    struct Item {
        int id;
        const char* name;
        std::function<CriterionResult()> run;
        double limit;  // seconds; 0 = none
    };
    std::vector<Item> items = {
        {1, "burnside-rank-anchor", [] { return detail::rank_anchor(); }, 1.0},
        {2, "span-associativity-unitality", [b] { return detail::span_laws(b); }, 0},
        {3, "span-factorization", [b] { return detail::span_factorization(b); }, 0},
        {4, "distributivity-universal-property", [b] { return detail::distributivity(b); },
         0},
        {5, "norm-oracle-equivalence", [] { return detail::norm_equivalence(); }, 0},
        {6, "mackey-double-coset-law", [] { return detail::mackey_law(); }, 0},
        {7, "chi-decomposition-census", [] { return detail::chi_census(); }, 0},
        {8, "tambara-functoriality", [b] { return detail::tambara_functoriality(b); }, 0},
        {9, "free-algebra-formula", [] { return detail::free_algebra(); },
         b == Battery::small ? 120.0 : 0},
        {10, "groupoid-pullback-sanity", [] { return detail::pullback_sanity(); }, 0},
    };
    std::vector<CriterionResult> out;
    for (auto& item : items) {
        auto t0 = clock::now();
        CriterionResult r;
        try {
            r = item.run();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = item.id;
        r.name = item.name;
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        if (r.pass && item.limit > 0 && r.seconds > item.limit) {
            r.pass = false;
            r.detail += "; exceeded the " + std::to_string(item.limit) + "s budget";
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// One line per criterion. with_times adds a wall-clock column, which makes
/// the output non-reproducible; callers that promise byte-stable output
/// leave it off.
inline std::string format_acceptance(const std::vector<CriterionResult>& results,
                                     bool with_times = true) {
    std::string out;
    bool all = true;
    for (const auto& r : results) {
        char head[80];
        if (with_times)
            std::snprintf(head, sizeof head, "%s  %2d  %-36s %7.2fs  ",
                          r.pass ? "pass" : "FAIL", r.id, r.name.c_str(), r.seconds);
        else
            std::snprintf(head, sizeof head, "%s  %2d  %-36s ",
                          r.pass ? "pass" : "FAIL", r.id, r.name.c_str());
        out += head;
        out += r.detail + "\n";
        all = all && r.pass;
    }
    out += all ? "all criteria pass\n" : "criteria FAILED\n";
    return out;
}

}  // namespace eqalg
