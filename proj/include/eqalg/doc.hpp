#pragma once

#include <map>

#include "eqalg/tambara.hpp"

namespace eqalg {

// Structured-text interchange. A document is a sequence of blocks separated
// by single blank lines; every block opens with a `schema:` line. Objects
// are embedded once and referenced by content hash, so references stay valid
// exactly when the referenced bytes do. Emission is byte-stable:
// parse_document followed by ParsedDocument::reemit reproduces the input.

// --- block emitters ---

inline std::string serialize_gset(const GSet& X) {
    std::string s = "schema: gset/1\n";
    s += "group: " + group_hash(*X.G) + "\n";
    s += "points: " + std::to_string(X.n) + "\n";
    if (X.n > 0) {
        s += "act:\n";
        for (const auto& row : X.act) s += join_ints(row) + "\n";
    }
    return s;
}

inline std::string gset_hash(const GSet& X) { return hash_hex(fnv1a(serialize_gset(X))); }

inline const char* map_class_name(MapClass c) {
    switch (c) {
        case MapClass::all: return "all";
        case MapClass::faithful: return "faithful";
        default: return "iso";
    }
}

inline const char* left_class_name(LeftClass c) {
    return c == LeftClass::iso ? "iso" : "full_surjective";
}

inline std::string serialize_span(const GSetSpan& s) {
    std::string out = "schema: span/1\n";
    out += "world: gset\n";
    out += std::string("spec: ") + map_class_name(s.spec.backwards) + " " +
           map_class_name(s.spec.forwards) + "\n";
    out += "left: " + gset_hash(s.left()) + "\n";
    out += "right: " + gset_hash(s.right()) + "\n";
    out += "apex: " + gset_hash(s.apex()) + "\n";
    out += "back: " + join_ints(s.back.f) + "\n";
    out += "fwd: " + join_ints(s.fwd.f) + "\n";
    return out;
}

inline std::string serialize_bispan(const GSetBispan& u) {
    std::string out = "schema: bispan/1\n";
    out += "world: gset\n";
    out += std::string("spec: ") + map_class_name(u.spec.norms) + " " +
           map_class_name(u.spec.sums) + " " + left_class_name(u.spec.lefts) + "\n";
    out += "a: " + gset_hash(u.l.dst) + "\n";
    out += "x: " + gset_hash(u.l.src) + "\n";
    out += "y: " + gset_hash(u.n.dst) + "\n";
    out += "b: " + gset_hash(u.m.dst) + "\n";
    out += "l: " + join_ints(u.l.f) + "\n";
    out += "n: " + join_ints(u.n.f) + "\n";
    out += "m: " + join_ints(u.m.f) + "\n";
    return out;
}

inline std::string serialize_gset_map(const GSetMap& f) {
    std::string out = "schema: gsetmap/1\n";
    out += "src: " + gset_hash(f.src) + "\n";
    out += "dst: " + gset_hash(f.dst) + "\n";
    out += "map: " + join_ints(f.f) + "\n";
    return out;
}

inline std::string serialize_functor(const GroupoidMap& F) {
    std::string out = "schema: gpdmap/1\n";
    out += "src: " + groupoid_hash(*F.src) + "\n";
    out += "dst: " + groupoid_hash(*F.dst) + "\n";
    out += "omap: " + join_ints(F.omap) + "\n";
    out += "mmap: " + join_ints(F.mmap) + "\n";
    return out;
}

/// Tab-separated marks table: row c lists the marks of the basis class c at
/// every subgroup class, under a header row of class labels.
inline std::string marks_dsv(const GroupPtr& G) {
    auto T = marks_table(G);
    int k = G->num_classes();
    std::string out = "class";
    for (int c = 0; c < k; ++c) out += "\t" + G->class_label(c);
    out += "\n";
    for (int c = 0; c < k; ++c) {
        out += G->class_label(c);
        for (int d = 0; d < k; ++d) out += "\t" + T->M[c][d].str();
        out += "\n";
    }
    return out;
}

inline std::string serialize_marks(const GroupPtr& G) {
    std::string out = "schema: marks/1\n";
    out += "group: " + group_hash(*G) + "\n";
    out += "table:\n";
    out += marks_dsv(G);
    return out;
}

// --- document assembly ---

/// Accumulates blocks, embedding each referenced object once, dependencies
/// first. str() joins the blocks with single blank lines.
struct DocumentBuilder {
    std::vector<std::string> blocks;
    std::set<std::string> seen;
    std::map<std::string, std::string> header;

    void add_block(const std::string& text, const std::string& hash = "") {
        if (!hash.empty()) {
            if (seen.count(hash)) return;
            seen.insert(hash);
        }
        blocks.push_back(text);
    }

    void add_group(const GroupPtr& G) {
        add_block(serialize_group(*G), group_hash(*G));
    }

    void add_gset(const GSet& X) {
        add_group(X.G);
        add_block(serialize_gset(X), gset_hash(X));
    }

    void add_gset_map(const GSetMap& f) {
        add_gset(f.src);
        add_gset(f.dst);
        add_block(serialize_gset_map(f));
    }

    void add_span(const GSetSpan& s) {
        add_gset(s.left());
        add_gset(s.right());
        add_gset(s.apex());
        add_block(serialize_span(s));
    }

    void add_bispan(const GSetBispan& u) {
        add_gset(u.l.dst);
        add_gset(u.l.src);
        add_gset(u.n.dst);
        add_gset(u.m.dst);
        add_block(serialize_bispan(u));
    }

    void add_groupoid(const GroupoidPtr& A) {
        add_block(serialize_groupoid(*A), groupoid_hash(*A));
    }

    void add_functor(const GroupoidMap& F) {
        add_groupoid(F.src);
        add_groupoid(F.dst);
        add_block(serialize_functor(F));
    }

    void add_marks(const GroupPtr& G) {
        add_group(G);
        add_block(serialize_marks(G));
    }

    std::string str() const {
        std::string out;
        if (!header.empty()) {
            out += "schema: eqalg-doc/1\n";
            for (const auto& [k, v] : header) out += k + ": " + v + "\n";
            out += "\n";
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) out += "\n";
            out += blocks[i];
        }
        return out;
    }
};

// --- parsing ---

namespace detail {

struct RawBlock {
    std::string kind;
    std::map<std::string, std::string> fields;
    std::map<std::string, std::vector<std::string>> tables;
    // emission order bookkeeping is not needed: every block kind has a fixed
    // field layout, so reemission is schema-driven
};

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline int parse_int(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        require(pos == s.size(), where + ": trailing characters in integer '" + s + "'");
        return v;
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error(where + ": not an integer: '" + s + "'");
    }
}

inline std::vector<int> parse_ints(const std::string& s, const std::string& where) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(parse_int(tok, where));
    return out;
}

inline std::vector<RawBlock> split_blocks(const std::string& text) {
    auto lines = split_lines(text);
    std::vector<std::vector<std::string>> groups;
    std::vector<std::string> cur;
    for (const auto& ln : lines) {
        if (ln.empty()) {
            if (!cur.empty()) groups.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ln);
        }
    }
    if (!cur.empty()) groups.push_back(std::move(cur));
    require(!groups.empty(), "document: no blocks");

    std::vector<RawBlock> out;
    for (const auto& g : groups) {
        RawBlock b;
        require(g[0].rfind("schema: ", 0) == 0,
                "document: block does not start with a schema line: '" + g[0] + "'");
        b.kind = g[0].substr(8);
        std::string open_table;
        for (std::size_t i = 1; i < g.size(); ++i) {
            const std::string& ln = g[i];
            auto colon = ln.find(':');
            bool is_field = colon != std::string::npos &&
                            ln.find(' ') >= colon;  // no space before the colon
            if (is_field) {
                std::string key = ln.substr(0, colon);
                std::string val = ln.substr(colon + 1);
                if (!val.empty() && val[0] == ' ') val.erase(0, 1);
                if (val.empty() && colon + 1 == ln.size()) {
                    open_table = key;
                    b.tables[key];
                } else {
                    require(!b.fields.count(key),
                            b.kind + ": duplicate field '" + key + "'");
                    b.fields[key] = val;
                    open_table.clear();
                }
            } else {
                require(!open_table.empty(),
                        b.kind + ": stray row outside a table: '" + ln + "'");
                b.tables[open_table].push_back(ln);
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

inline const std::string& field(const RawBlock& b, const std::string& key) {
    auto it = b.fields.find(key);
    require(it != b.fields.end(), b.kind + ": missing field '" + key + "'");
    return it->second;
}

inline MapClass parse_map_class(const std::string& s, const std::string& where) {
    if (s == "all") return MapClass::all;
    if (s == "faithful") return MapClass::faithful;
    if (s == "iso") return MapClass::iso;
    throw input_error(where + ": unknown map class '" + s + "'");
}

inline LeftClass parse_left_class(const std::string& s, const std::string& where) {
    if (s == "iso") return LeftClass::iso;
    if (s == "full_surjective") return LeftClass::full_surjective;
    throw input_error(where + ": unknown left class '" + s + "'");
}

inline std::vector<std::string> parse_spec_words(const std::string& s, std::size_t want) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    require(out.size() == want, "spec field: expected " + std::to_string(want) +
                                    " class names, got " + std::to_string(out.size()));
    return out;
}

}  // namespace detail

/// Every object of a parsed document, keyed by content hash where hashes are
/// how blocks reference each other. reemit() reproduces the exact input
/// bytes of a well-formed document.
struct ParsedDocument {
    std::map<std::string, std::string> header;
    std::map<std::string, GroupPtr> groups;
    std::map<std::string, GSet> gsets;
    std::map<std::string, GroupoidPtr> groupoids;
    std::vector<std::string> group_order, gset_order, groupoid_order;  // by appearance
    std::vector<GSetMap> gset_maps;
    std::vector<GroupoidMap> functors;
    std::vector<GSetSpan> spans;
    std::vector<GSetBispan> bispans;
    std::vector<GroupPtr> marks_groups;
    std::vector<std::string> blocks;  // reemitted per-block text, input order

    const GroupPtr& group_at(const std::string& h) const {
        auto it = groups.find(h);
        require(it != groups.end(), "document: reference to unknown group " + h);
        return it->second;
    }

    const GSet& gset_at(const std::string& h) const {
        auto it = gsets.find(h);
        require(it != gsets.end(), "document: reference to unknown gset " + h);
        return it->second;
    }

    const GroupoidPtr& groupoid_at(const std::string& h) const {
        auto it = groupoids.find(h);
        require(it != groupoids.end(), "document: reference to unknown groupoid " + h);
        return it->second;
    }

    std::string reemit() const {
        DocumentBuilder b;
        b.header = header;
        b.blocks = blocks;
        return b.str();
    }
};

inline ParsedDocument parse_document(const std::string& text) {
    using namespace detail;
    ParsedDocument doc;
    auto raw = split_blocks(text);
    std::size_t start = 0;
    if (raw[0].kind == "eqalg-doc/1") {
        doc.header = raw[0].fields;
        require(raw[0].tables.empty(), "eqalg-doc/1: unexpected table");
        start = 1;
    }
    for (std::size_t i = start; i < raw.size(); ++i) {
        const RawBlock& b = raw[i];
        if (b.kind == "group/1") {
            int n = parse_int(field(b, "order"), "group/1 order");
            auto mit = b.tables.find("mul");
            require(mit != b.tables.end(), "group/1: missing mul table");
            require(static_cast<int>(mit->second.size()) == n,
                    "group/1: expected " + std::to_string(n) + " mul rows, got " +
                        std::to_string(mit->second.size()));
            std::vector<std::vector<int>> mul;
            for (const auto& row : mit->second) mul.push_back(parse_ints(row, "group/1 mul"));
            std::vector<std::vector<int>> gens;
            if (auto git = b.tables.find("gens"); git != b.tables.end())
                for (const auto& row : git->second)
                    gens.push_back(parse_ints(row, "group/1 gens"));
            auto G = make_group(field(b, "name"), std::move(mul), std::move(gens));
            doc.blocks.push_back(serialize_group(*G));
            doc.group_order.push_back(group_hash(*G));
            doc.groups.emplace(doc.group_order.back(), std::move(G));
        } else if (b.kind == "gset/1") {
            const GroupPtr& G = doc.group_at(field(b, "group"));
            int n = parse_int(field(b, "points"), "gset/1 points");
            std::vector<std::vector<int>> act(G->n);
            if (n > 0) {
                auto ait = b.tables.find("act");
                require(ait != b.tables.end(), "gset/1: missing act table");
                require(static_cast<int>(ait->second.size()) == G->n,
                        "gset/1: expected " + std::to_string(G->n) + " act rows, got " +
                            std::to_string(ait->second.size()));
                for (int g = 0; g < G->n; ++g) {
                    act[g] = parse_ints(ait->second[g], "gset/1 act");
                    require(static_cast<int>(act[g].size()) == n,
                            "gset/1: act row " + std::to_string(g) + " has " +
                                std::to_string(act[g].size()) + " entries, expected " +
                                std::to_string(n));
                }
            }
            GSet X = make_gset(G, std::move(act));
            doc.blocks.push_back(serialize_gset(X));
            doc.gset_order.push_back(gset_hash(X));
            doc.gsets.emplace(doc.gset_order.back(), std::move(X));
        } else if (b.kind == "gsetmap/1") {
            const GSet& src = doc.gset_at(field(b, "src"));
            const GSet& dst = doc.gset_at(field(b, "dst"));
            auto f = make_map(src, dst, parse_ints(field(b, "map"), "gsetmap/1 map"));
            doc.blocks.push_back(serialize_gset_map(f));
            doc.gset_maps.push_back(std::move(f));
        } else if (b.kind == "span/1") {
            require(field(b, "world") == "gset", "span/1: only the gset world is parsed");
            auto spec_parts = parse_spec_words(field(b, "spec"), 2);
            TripleSpec spec{WorldTag::gset,
                            parse_map_class(spec_parts[0], "span/1 spec"),
                            parse_map_class(spec_parts[1], "span/1 spec")};
            const GSet& left = doc.gset_at(field(b, "left"));
            const GSet& right = doc.gset_at(field(b, "right"));
            const GSet& apex = doc.gset_at(field(b, "apex"));
            auto back = make_map(apex, left, parse_ints(field(b, "back"), "span/1 back"));
            auto fwd = make_map(apex, right, parse_ints(field(b, "fwd"), "span/1 fwd"));
            auto s = make_gset_span(spec, std::move(back), std::move(fwd));
            doc.blocks.push_back(serialize_span(s));
            doc.spans.push_back(std::move(s));
        } else if (b.kind == "bispan/1") {
            require(field(b, "world") == "gset", "bispan/1: only the gset world is parsed");
            auto spec_parts = parse_spec_words(field(b, "spec"), 3);
            BispanSpec spec{WorldTag::gset,
                            parse_map_class(spec_parts[0], "bispan/1 spec"),
                            parse_map_class(spec_parts[1], "bispan/1 spec"),
                            parse_left_class(spec_parts[2], "bispan/1 spec")};
            const GSet& A = doc.gset_at(field(b, "a"));
            const GSet& X = doc.gset_at(field(b, "x"));
            const GSet& Y = doc.gset_at(field(b, "y"));
            const GSet& B = doc.gset_at(field(b, "b"));
            auto l = make_map(X, A, parse_ints(field(b, "l"), "bispan/1 l"));
            auto n = make_map(X, Y, parse_ints(field(b, "n"), "bispan/1 n"));
            auto m = make_map(Y, B, parse_ints(field(b, "m"), "bispan/1 m"));
            auto u = make_gset_bispan(spec, std::move(l), std::move(n), std::move(m));
            doc.blocks.push_back(serialize_bispan(u));
            doc.bispans.push_back(std::move(u));
        } else if (b.kind == "groupoid/1") {
            int nobj = parse_int(field(b, "objects"), "groupoid/1 objects");
            int nmor = parse_int(field(b, "morphisms"), "groupoid/1 morphisms");
            auto src = parse_ints(field(b, "src"), "groupoid/1 src");
            auto tgt = parse_ints(field(b, "tgt"), "groupoid/1 tgt");
            auto idm = parse_ints(field(b, "ids"), "groupoid/1 ids");
            auto invm = parse_ints(field(b, "inv"), "groupoid/1 inv");
            require(static_cast<int>(src.size()) == nmor,
                    "groupoid/1: src length disagrees with morphism count");
            auto cit = b.tables.find("comp");
            require(cit != b.tables.end(), "groupoid/1: missing comp table");
            std::unordered_map<std::uint64_t, int> comp;
            for (const auto& row : cit->second) {
                auto t = parse_ints(row, "groupoid/1 comp");
                require(t.size() == 3, "groupoid/1: comp row needs 3 entries: '" + row + "'");
                require(0 <= t[0] && t[0] < nmor && 0 <= t[1] && t[1] < nmor,
                        "groupoid/1: comp row indexes out of range: '" + row + "'");
                comp[static_cast<std::uint64_t>(t[1]) * nmor + t[0]] = t[2];
            }
            auto A = make_groupoid(nobj, std::move(src), std::move(tgt), std::move(idm),
                                   std::move(invm), std::move(comp));
            doc.blocks.push_back(serialize_groupoid(*A));
            doc.groupoid_order.push_back(groupoid_hash(*A));
            doc.groupoids.emplace(doc.groupoid_order.back(), std::move(A));
        } else if (b.kind == "gpdmap/1") {
            const GroupoidPtr& src = doc.groupoid_at(field(b, "src"));
            const GroupoidPtr& dst = doc.groupoid_at(field(b, "dst"));
            auto F = make_functor(src, dst, parse_ints(field(b, "omap"), "gpdmap/1 omap"),
                                  parse_ints(field(b, "mmap"), "gpdmap/1 mmap"));
            doc.blocks.push_back(serialize_functor(F));
            doc.functors.push_back(std::move(F));
        } else if (b.kind == "marks/1") {
            const GroupPtr& G = doc.group_at(field(b, "group"));
            auto tit = b.tables.find("table");
            require(tit != b.tables.end(), "marks/1: missing table");
            std::string expect = marks_dsv(G);
            std::string got;
            for (const auto& row : tit->second) got += row + "\n";
            require(got == expect, "marks/1: table disagrees with the marks of its group");
            doc.blocks.push_back(serialize_marks(G));
            doc.marks_groups.push_back(G);
        } else {
            throw input_error("document: unknown schema '" + b.kind + "'");
        }
    }
    return doc;
}

}  // namespace eqalg
