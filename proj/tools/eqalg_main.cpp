// Command-line surface: compute, compose, verify, and export the library's
// objects as versioned interchange documents.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 capacity.
// Every flag can also be set by an environment variable with the EQALG_
// prefix (EQALG_CAP_POINTS, EQALG_SEED, ...). Output is byte-stable for
// fixed inputs and options; document outputs record the seed in their
// header block, table outputs in a `seed:` line.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "eqalg/verify.hpp"

namespace {

using namespace eqalg;

struct Options {
    int cap_objects = 64;
    int cap_points = 3;
    int max_degree = 3;
    int seed = 0;
    std::string format = "table";
    std::string battery = "small";

    bool doc() const { return format == "doc"; }
};

GroupPtr builtin_group(const std::string& name) {
    auto piece = [](const std::string& s) -> GroupPtr {
        require(s.size() >= 2, "group name '" + s + "' too short");
        int k = 0;
        try {
            std::size_t pos = 0;
            k = std::stoi(s.substr(1), &pos);
            require(pos + 1 == s.size(), "group name '" + s + "' has trailing characters");
        } catch (const input_error&) {
            throw;
        } catch (const std::exception&) {
            throw input_error("group name '" + s + "' needs an integer after the letter");
        }
        switch (s[0]) {
            case 'C': return cyclic_group(k);
            case 'S': return symmetric_group(k);
            case 'D': return dihedral_group(k);
            default:
                throw input_error("unknown group family '" + s.substr(0, 1) +
                                  "' (use C<n>, S<n>, D<n>, joined with x)");
        }
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : name) {
        if (ch == 'x') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    GroupPtr G = piece(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) G = product_group(G, piece(parts[i]));
    return G;
}

/// terms joined by '+': regular | trivial:<k> | orbit:<class index>
GSet gset_expr(const GroupPtr& G, const std::string& expr) {
    GSet X = empty_gset(G);
    std::string cur;
    auto flush = [&](const std::string& term) {
        require(!term.empty(), "gset expression has an empty term");
        if (term == "regular") {
            X = disjoint_union(X, coset_gset(G, {G->e}));
            return;
        }
        auto colon = term.find(':');
        require(colon != std::string::npos,
                "gset term '" + term + "' is not regular, trivial:<k>, or orbit:<c>");
        std::string kind = term.substr(0, colon);
        int arg = 0;
        try {
            std::size_t pos = 0;
            arg = std::stoi(term.substr(colon + 1), &pos);
            require(colon + 1 + pos == term.size(), "gset term '" + term + "' is malformed");
        } catch (const input_error&) {
            throw;
        } catch (const std::exception&) {
            throw input_error("gset term '" + term + "' needs an integer argument");
        }
        if (kind == "trivial") {
            require(arg >= 0, "trivial:<k> needs k >= 0");
            X = disjoint_union(X, trivial_gset(G, arg));
        } else if (kind == "orbit") {
            require(0 <= arg && arg < G->num_classes(),
                    "orbit class " + std::to_string(arg) + " out of range for " + G->name +
                        " (" + std::to_string(G->num_classes()) + " classes)");
            X = disjoint_union(X, orbit_gset(G, arg));
        } else {
            throw input_error("unknown gset term kind '" + kind + "'");
        }
    };
    for (char ch : expr) {
        if (ch == '+') {
            flush(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    flush(cur);
    return X;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParsedDocument load(const std::string& path) { return parse_document(slurp(path)); }

std::string table_header(const std::string& kind, const Options& opt,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
    std::string s = "schema: " + kind + "/1\n";
    for (const auto& [k, v] : extra) s += k + ": " + v + "\n";
    s += "seed: " + std::to_string(opt.seed) + "\n";
    return s;
}

void emit(DocumentBuilder& b, const Options& opt) {
    b.header["seed"] = std::to_string(opt.seed);
    std::cout << b.str();
}

// --- subcommand bodies; return the process exit code ---

int cmd_groupoid_pullback(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(doc.functors.size() >= 2, "groupoid pullback needs two functor blocks, found " +
                                          std::to_string(doc.functors.size()));
    const auto& f = doc.functors[0];
    const auto& g = doc.functors[1];
    require(f.dst == g.dst, "pullback: the two functors have different target groupoids");
    long objs = 0;
    for (int a = 0; a < f.src->nobj; ++a)
        for (int b = 0; b < g.src->nobj; ++b)
            objs += static_cast<long>(f.dst->hom[f.omap[a]][g.omap[b]].size());
    check_capacity(objs <= opt.cap_objects,
                   "pullback: apex would have " + std::to_string(objs) +
                       " objects; raise --cap-objects");
    auto sq = iso_comma_pullback(f, g);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_functor(sq.f);
        b.add_functor(sq.g);
        b.add_functor(sq.pA);
        b.add_functor(sq.pB);
        emit(b, opt);
    } else {
        std::cout << table_header(
            "pullback-table", opt,
            {{"apex-objects", std::to_string(sq.apex->nobj)},
             {"apex-morphisms", std::to_string(sq.apex->nmor())},
             {"apex-components", std::to_string(components(*sq.apex).size())},
             {"pA-faithful", is_faithful(sq.pA) ? "yes" : "no"},
             {"pB-faithful", is_faithful(sq.pB) ? "yes" : "no"}});
    }
    return 0;
}

int cmd_groupoid_factor(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(doc.functors.size() >= 1, "groupoid factor needs a functor block");
    auto em = em_factorize(doc.functors[0]);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_functor(em.e);
        b.add_functor(em.m);
        emit(b, opt);
    } else {
        std::cout << table_header(
            "factor-table", opt,
            {{"image-objects", std::to_string(em.image->nobj)},
             {"image-morphisms", std::to_string(em.image->nmor())},
             {"e-component-full", is_componentwise_full(em.e) ? "yes" : "no"},
             {"m-faithful", is_faithful(em.m) ? "yes" : "no"}});
    }
    return 0;
}

GSet orbit_sub_gset(const GSet& X, const Orbit& o) {
    std::map<int, int> idx;
    for (std::size_t i = 0; i < o.points.size(); ++i) idx[o.points[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> act(X.G->n, std::vector<int>(o.points.size()));
    for (int g = 0; g < X.G->n; ++g)
        for (std::size_t i = 0; i < o.points.size(); ++i)
            act[g][i] = idx.at(X.act[g][o.points[i]]);
    return make_gset(X.G, std::move(act));
}

int cmd_gset_orbits(const Options& opt, const std::string& file, const std::string& group,
                    const std::string& expr) {
    GSet X = [&] {
        if (!file.empty()) {
            auto doc = load(file);
            require(!doc.gset_order.empty(), "gset orbits: document has no gset block");
            return doc.gsets.at(doc.gset_order[0]);
        }
        require(!group.empty(), "gset orbits needs an input file or --group");
        return gset_expr(builtin_group(group), expr);
    }();
    auto obs = orbits(X);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_gset(X);
        for (const auto& o : obs) b.add_gset(orbit_sub_gset(X, o));
        emit(b, opt);
    } else {
        std::cout << table_header("orbits-table", opt,
                                  {{"group", X.G->name},
                                   {"points", std::to_string(X.n)},
                                   {"orbits", std::to_string(obs.size())}});
        std::cout << "orbit\tsize\tstabilizer\tpoints\n";
        for (std::size_t i = 0; i < obs.size(); ++i)
            std::cout << i << "\t" << obs[i].points.size() << "\t"
                      << X.G->class_label(obs[i].stab_class) << "\t"
                      << join_ints(obs[i].points) << "\n";
    }
    return 0;
}

int cmd_gset_depprod(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(doc.gset_maps.size() >= 2, "dependent product needs two gset map blocks, found " +
                                           std::to_string(doc.gset_maps.size()));
    const GSetMap& a = doc.gset_maps[0];
    const GSetMap& b2 = doc.gset_maps[1];
    const GSetMap *n = nullptr, *m = nullptr;
    if (b2.dst == a.src) {
        n = &a;
        m = &b2;
    } else if (a.dst == b2.src) {
        n = &b2;
        m = &a;
    } else {
        throw input_error("dependent product needs composable maps m: X -> A, n: A -> B; "
                          "the two map blocks do not chain");
    }
    auto d = dependent_product(*n, *m);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_gset_map(d.m_prime);
        b.add_gset_map(d.n_prime);
        b.add_gset_map(d.m_dbl);
        b.add_gset_map(d.eps);
        emit(b, opt);
    } else {
        std::cout << table_header("depprod-table", opt,
                                  {{"group", d.Y.G->name},
                                   {"sections", std::to_string(d.Y.n)},
                                   {"pullback-points", std::to_string(d.Xp.n)}});
        std::cout << "m_prime: " << join_ints(d.m_prime.f) << "\n";
        std::cout << "n_prime: " << join_ints(d.n_prime.f) << "\n";
        std::cout << "eps: " << join_ints(d.eps.f) << "\n";
    }
    return 0;
}

int cmd_gset_sigma(const Options& opt, const std::string& group) {
    auto G = builtin_group(group);
    std::cout << table_header("sigma-table", opt,
                              {{"group", G->name},
                               {"max-points", std::to_string(opt.cap_points)}});
    std::cout << "points\tiso-classes\thom-classes\tmatch\n";
    bool all = true;
    for (int n = 0; n <= opt.cap_points; ++n) {
        auto c = sigma_classes(G, n);
        all = all && c.match();
        std::cout << n << "\t" << c.iso_classes << "\t" << c.hom_classes << "\t"
                  << (c.match() ? "yes" : "NO") << "\n";
    }
    return all ? 0 : 1;
}

void print_span_table(const Options& opt, const GSetSpan& s) {
    std::cout << table_header("span-table", opt,
                              {{"group", s.apex().G->name},
                               {"left", std::to_string(s.left().n)},
                               {"right", std::to_string(s.right().n)},
                               {"apex", std::to_string(s.apex().n)}});
    std::cout << "back: " << join_ints(s.back.f) << "\n";
    std::cout << "fwd: " << join_ints(s.fwd.f) << "\n";
}

int cmd_span_compose(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(!doc.spans.empty(), "span compose needs at least one span block");
    GSetSpan acc = doc.spans[0];
    for (std::size_t i = 1; i < doc.spans.size(); ++i)
        acc = compose_spans(acc, doc.spans[i]);
    acc = canonical_span(acc);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_span(acc);
        emit(b, opt);
    } else {
        print_span_table(opt, acc);
    }
    return 0;
}

int cmd_span_homs(const Options& opt, const std::string& group, int left, int right) {
    auto G = builtin_group(group);
    require(0 <= left && left < G->num_classes(), "--left class out of range");
    require(0 <= right && right < G->num_classes(), "--right class out of range");
    auto classes =
        hom_enumerate(orbit_gset(G, left), orbit_gset(G, right), gset_triple(), opt.cap_points);
    if (opt.doc()) {
        DocumentBuilder b;
        for (const auto& c : classes) b.add_span(c.rep);
        emit(b, opt);
    } else {
        std::cout << table_header("homs-table", opt,
                                  {{"group", G->name},
                                   {"left", G->class_label(left)},
                                   {"right", G->class_label(right)},
                                   {"cap-points", std::to_string(opt.cap_points)},
                                   {"classes", std::to_string(classes.size())}});
        std::cout << "class\tapex\taut\n";
        for (std::size_t i = 0; i < classes.size(); ++i)
            std::cout << i << "\t" << classes[i].rep.apex().n << "\t"
                      << classes[i].aut.str() << "\n";
    }
    return 0;
}

int cmd_span_factor(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(!doc.spans.empty(), "span factor needs a span block");
    auto [bw, fw] = factor_span(doc.spans[0]);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_span(bw);
        b.add_span(fw);
        emit(b, opt);
    } else {
        print_span_table(opt, bw);
        print_span_table(opt, fw);
    }
    return 0;
}

int cmd_bispan_compose(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(!doc.bispans.empty(), "bispan compose needs at least one bispan block");
    GSetBispan acc = doc.bispans[0];
    for (std::size_t i = 1; i < doc.bispans.size(); ++i)
        acc = compose_bispans(acc, doc.bispans[i]);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_bispan(acc);
        emit(b, opt);
    } else {
        std::cout << table_header("bispan-table", opt,
                                  {{"group", acc.l.src.G->name},
                                   {"left", std::to_string(acc.left().n)},
                                   {"x", std::to_string(acc.l.src.n)},
                                   {"y", std::to_string(acc.n.dst.n)},
                                   {"right", std::to_string(acc.right().n)}});
        std::cout << "l: " << join_ints(acc.l.f) << "\n";
        std::cout << "n: " << join_ints(acc.n.f) << "\n";
        std::cout << "m: " << join_ints(acc.m.f) << "\n";
    }
    return 0;
}

int cmd_bispan_check(const Options& opt, const std::string& group) {
    auto G = builtin_group(group);
    auto res = check_functoriality(as_tambara_oracle(G), gset_bispan_spec(), G,
                                   opt.cap_points);
    std::cout << table_header("check-table", opt,
                              {{"group", G->name},
                               {"cap-points", std::to_string(opt.cap_points)},
                               {"result", res.ok ? "ok" : "FAIL"}});
    if (!res.detail.empty()) std::cout << "detail: " << res.detail << "\n";
    return res.ok ? 0 : 1;
}

int cmd_tambara_marks(const Options& opt, const std::string& group) {
    auto G = builtin_group(group);
    if (opt.doc()) {
        DocumentBuilder b;
        b.add_marks(G);
        emit(b, opt);
    } else {
        std::cout << table_header("marks-table", opt, {{"group", G->name}});
        std::cout << marks_dsv(G);
    }
    return 0;
}

std::string join_coeffs(const std::vector<Int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back(' ');
        out += v[i].str();
    }
    return out;
}

std::string class_labels(const GroupPtr& G) {
    std::string out;
    for (int c = 0; c < G->num_classes(); ++c) {
        if (c) out.push_back(' ');
        out += G->class_label(c);
    }
    return out;
}

int cmd_tambara_norm(const Options& opt, const std::string& group, int subgroup,
                     const std::string& coeff) {
    auto G = builtin_group(group);
    require(0 <= subgroup && subgroup < G->num_classes(),
            "--subgroup class out of range for " + G->name);
    const auto& H = G->subgroup_classes()[subgroup];
    const auto& emb = G->subgroup_group(H);
    BurnsideElement x = burnside_unit(emb.group);
    if (!coeff.empty()) {
        std::istringstream in(coeff);
        std::vector<Int> c;
        std::string tok;
        while (in >> tok) {
            try {
                c.push_back(Int(tok));
            } catch (const std::exception&) {
                throw input_error("--coeff entry '" + tok + "' is not an integer");
            }
        }
        require(static_cast<int>(c.size()) == emb.group->num_classes(),
                "--coeff needs " + std::to_string(emb.group->num_classes()) +
                    " entries for subgroup class " + G->class_label(subgroup));
        x.coeff = std::move(c);
    }
    auto y = norm_virtual(G, H, x);
    std::cout << table_header("norm-table", opt,
                              {{"group", G->name}, {"subgroup", G->class_label(subgroup)}});
    std::cout << "input-classes: " << class_labels(emb.group) << "\n";
    std::cout << "input: " << join_coeffs(x.coeff) << "\n";
    std::cout << "result-classes: " << class_labels(G) << "\n";
    std::cout << "result: " << join_coeffs(y.coeff) << "\n";
    std::cout << "result-marks: " << join_coeffs(marks(y).v) << "\n";
    return 0;
}

int cmd_tambara_eval(const Options& opt, const std::string& file) {
    auto doc = load(file);
    require(!doc.bispans.empty(), "tambara eval needs a bispan block");
    std::cout << table_header("eval-table", opt,
                              {{"group", doc.bispans[0].l.src.G->name},
                               {"bispans", std::to_string(doc.bispans.size())}});
    for (std::size_t bi = 0; bi < doc.bispans.size(); ++bi) {
        const auto& u = doc.bispans[bi];
        auto oracle = as_tambara_oracle(u.l.src.G);
        auto right_orbits = orbits(u.right());
        auto battery = oracle.battery(u.left());
        std::cout << "bispan " << bi << ": " << u.left().n << " <- " << u.l.src.n << " -> "
                  << u.n.dst.n << " -> " << u.right().n << "\n";
        for (std::size_t vi = 0; vi < battery.size(); ++vi) {
            auto out = apply_bispan(oracle, u, battery[vi]);
            for (std::size_t oi = 0; oi < out.per_orbit.size(); ++oi)
                std::cout << "value " << bi << "." << vi << " orbit " << oi << " over "
                          << u.right().G->class_label(right_orbits[oi].stab_class) << ": "
                          << join_coeffs(out.per_orbit[oi].coeff) << "\n";
        }
    }
    return 0;
}

int cmd_free_check(const Options& opt, const std::string& group, const std::string& expr) {
    auto G = builtin_group(group);
    GSet X = gset_expr(G, expr);
    auto rep = free_underlying(X, opt.max_degree);
    std::cout << table_header("freecheck-table", opt,
                              {{"group", G->name},
                               {"gset", expr},
                               {"points", std::to_string(X.n)},
                               {"max-degree", std::to_string(opt.max_degree)}});
    std::cout << "degree\tdirect\tpipeline\tagree\n";
    for (int n = 0; n <= rep.max_degree; ++n)
        std::cout << n << "\t" << rep.direct[n].n << "\t" << rep.pipeline[n].n << "\t"
                  << (rep.agree[n] ? "yes" : "NO") << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_free_census(const Options& opt, const std::string& group, int gen, int end) {
    auto G = builtin_group(group);
    require(0 <= gen && gen < G->num_classes(), "--gen class out of range");
    require(0 <= end && end < G->num_classes(), "--end class out of range");
    auto cen = free_tambara_census(G, gen, end, opt.cap_points);
    std::cout << table_header("census-table", opt,
                              {{"group", G->name},
                               {"generator", G->class_label(gen)},
                               {"evaluation", G->class_label(end)},
                               {"cap-points", std::to_string(opt.cap_points)}});
    std::cout << "degree\tclasses\tmonomials\n";
    std::size_t rows = std::max(cen.by_degree.size(), cen.monomial.size());
    for (std::size_t d = 0; d < rows; ++d) {
        Int bd = d < cen.by_degree.size() ? cen.by_degree[d] : Int(0);
        Int mo = d < cen.monomial.size() ? cen.monomial[d] : Int(0);
        std::cout << d << "\t" << bd.str() << "\t" << mo.str() << "\n";
    }
    return 0;
}

int cmd_verify_all(const Options& opt) {
    auto results = run_acceptance(opt.battery == "full" ? Battery::full : Battery::small);
    std::cout << table_header("verify-table", opt, {{"battery", opt.battery}});
    std::cout << format_acceptance(results, false);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite equivariant algebra workbench: spans and bispans of finite "
                 "G-sets and groupoids, Burnside-ring operators, symmetric powers"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--cap-objects", opt.cap_objects,
                   "object budget for groupoid constructions (default 64)")
        ->envname("EQALG_CAP_OBJECTS");
    app.add_option("--cap-points", opt.cap_points,
                   "point cap for enumerations and apex sizes (default 3)")
        ->envname("EQALG_CAP_POINTS");
    app.add_option("--max-degree", opt.max_degree, "degree bound for free-algebra commands")
        ->envname("EQALG_MAX_DEGREE");
    app.add_option("--seed", opt.seed, "seed recorded in output headers (searches are "
                                       "deterministic; reserved for future randomization)")
        ->envname("EQALG_SEED");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "doc"}))
        ->envname("EQALG_FORMAT");
    app.add_option("--battery", opt.battery, "verification battery")
        ->check(CLI::IsMember({"small", "full"}))
        ->envname("EQALG_BATTERY");

    std::string file, group, gexpr = "regular", coeff;
    int left = 0, right = 0, subgroup = 0, gen = 0, end = 0;
    int rc = 0;

    auto* gpd = app.add_subcommand("groupoid", "finite groupoid operations");
    auto* gpd_pb = gpd->add_subcommand(
        "pullback", "iso-comma pullback of the first two functor blocks of a document");
    gpd_pb->add_option("file", file, "input document")->required();
    gpd_pb->callback([&] { rc = cmd_groupoid_pullback(opt, file); });
    auto* gpd_fa = gpd->add_subcommand(
        "factor", "factor the first functor block as component-full then faithful");
    gpd_fa->add_option("file", file, "input document")->required();
    gpd_fa->callback([&] { rc = cmd_groupoid_factor(opt, file); });
    gpd->require_subcommand(1);

    auto* gs = app.add_subcommand("gset", "finite G-set operations");
    auto* gs_or = gs->add_subcommand("orbits", "orbit decomposition of a gset");
    gs_or->add_option("file", file, "input document (or use --group/--gset)");
    gs_or->add_option("--group", group, "builtin group name, e.g. C2, S3, C2xC2");
    gs_or->add_option("--gset", gexpr, "gset expression: regular|trivial:<k>|orbit:<c>, "
                                       "joined by +");
    gs_or->callback([&] { rc = cmd_gset_orbits(opt, file, group, gexpr); });
    auto* gs_dp = gs->add_subcommand(
        "depprod", "dependent product of the first two composable map blocks");
    gs_dp->add_option("file", file, "input document")->required();
    gs_dp->callback([&] { rc = cmd_gset_depprod(opt, file); });
    auto* gs_si = gs->add_subcommand(
        "sigma", "count iso classes of n-point actions against permutation "
                 "representations up to conjugacy, n up to --cap-points");
    gs_si->add_option("--group", group, "builtin group name")->required();
    gs_si->callback([&] { rc = cmd_gset_sigma(opt, group); });
    gs->require_subcommand(1);

    auto* sp = app.add_subcommand("span", "spans of finite G-sets");
    auto* sp_co = sp->add_subcommand(
        "compose", "compose the document's spans left to right and canonicalize");
    sp_co->add_option("file", file, "input document")->required();
    sp_co->callback([&] { rc = cmd_span_compose(opt, file); });
    auto* sp_ho = sp->add_subcommand(
        "homs", "isomorphism classes of spans between two orbits, apex within --cap-points");
    sp_ho->add_option("--group", group, "builtin group name")->required();
    sp_ho->add_option("--left", left, "left orbit class index");
    sp_ho->add_option("--right", right, "right orbit class index");
    sp_ho->callback([&] { rc = cmd_span_homs(opt, group, left, right); });
    auto* sp_fa = sp->add_subcommand(
        "factor", "factor the first span block as backwards then forwards");
    sp_fa->add_option("file", file, "input document")->required();
    sp_fa->callback([&] { rc = cmd_span_factor(opt, file); });
    sp->require_subcommand(1);

    auto* bs = app.add_subcommand("bispan", "bispans of finite G-sets");
    auto* bs_co = bs->add_subcommand(
        "compose", "compose the document's bispans left to right into normal form");
    bs_co->add_option("file", file, "input document")->required();
    bs_co->callback([&] { rc = cmd_bispan_compose(opt, file); });
    auto* bs_ck = bs->add_subcommand(
        "check-tambara", "check the Burnside operator dictionary against all composable "
                         "bispan pairs with orbit endpoints and apices within --cap-points");
    bs_ck->add_option("--group", group, "builtin group name")->required();
    bs_ck->callback([&] { rc = cmd_bispan_check(opt, group); });
    bs->require_subcommand(1);

    auto* tb = app.add_subcommand("tambara", "Burnside ring operators");
    auto* tb_mk = tb->add_subcommand("marks", "table of marks with class labels");
    tb_mk->add_option("--group", group, "builtin group name")->required();
    tb_mk->callback([&] { rc = cmd_tambara_marks(opt, group); });
    auto* tb_no = tb->add_subcommand(
        "norm", "multiplicative norm of a virtual element from a subgroup class");
    tb_no->add_option("--group", group, "builtin group name")->required();
    tb_no->add_option("--subgroup", subgroup, "subgroup class index (see tambara marks)")
        ->required();
    tb_no->add_option("--coeff", coeff,
                      "coefficients over the subgroup's classes, e.g. \"2 0\" (default: "
                      "the unit)");
    tb_no->callback([&] { rc = cmd_tambara_norm(opt, group, subgroup, coeff); });
    auto* tb_ev = tb->add_subcommand(
        "eval", "apply the Burnside operator of each bispan block to the level battery");
    tb_ev->add_option("file", file, "input document")->required();
    tb_ev->callback([&] { rc = cmd_tambara_eval(opt, file); });
    tb->require_subcommand(1);

    auto* fr = app.add_subcommand("free", "free algebra on one generator");
    auto* fr_ck = fr->add_subcommand(
        "check", "compare the subduction-norm-inflation pipeline against symmetric powers "
                 "degree by degree");
    fr_ck->add_option("--group", group, "builtin group name")->required();
    fr_ck->add_option("--gset", gexpr, "generator gset expression (default regular)");
    fr_ck->callback([&] { rc = cmd_free_check(opt, group, gexpr); });
    auto* fr_ce = fr->add_subcommand(
        "census", "grade the operator classes from a generator orbit by degree");
    fr_ce->add_option("--group", group, "builtin group name")->required();
    fr_ce->add_option("--gen", gen, "generator orbit class index");
    fr_ce->add_option("--end", end, "evaluation orbit class index");
    fr_ce->callback([&] { rc = cmd_free_census(opt, group, gen, end); });
    fr->require_subcommand(1);

    auto* vf = app.add_subcommand("verify", "verification batteries");
    auto* vf_all = vf->add_subcommand("all", "run the full acceptance battery");
    vf_all->callback([&] { rc = cmd_verify_all(opt); });
    vf->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const eqalg::verify_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const eqalg::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const eqalg::capacity_error& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
