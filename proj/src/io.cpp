#include "igm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace igm {

parse_error::parse_error(const std::string& src, int ln, int col, const std::string& what)
    : input_error(src + ":" + std::to_string(ln) + ":" + std::to_string(col) + ": " + what),
      source(src),
      line(ln),
      column(col) {}

namespace {

struct token {
    std::string_view text;
    int column = 0;
};

// One non-blank, non-comment line split into whitespace-separated tokens.
class record {
public:
    record(const std::string& source, int line, std::vector<token> tokens)
        : source_(source), line_(line), tokens_(std::move(tokens)) {}

    int line() const { return line_; }
    std::size_t size() const { return tokens_.size(); }
    std::string_view keyword() const { return tokens_[0].text; }

    [[noreturn]] void fail(std::size_t at, const std::string& what) const {
        const int col = at < tokens_.size() ? tokens_[at].column : end_column();
        throw parse_error(source_, line_, col, what);
    }

    void expect_fields(std::size_t n, std::string_view shape) const {
        if (tokens_.size() < n) fail(tokens_.size(), "expected '" + std::string(shape) + "'");
        if (tokens_.size() > n) fail(n, "unexpected trailing field in '" + std::string(shape) + "'");
    }

    std::int64_t integer(std::size_t at) const {
        if (at >= tokens_.size()) fail(at, "missing integer");
        const std::string_view t = tokens_[at].text;
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc{} || ptr != t.data() + t.size()) fail(at, "expected an integer, got '" + std::string(t) + "'");
        return value;
    }

    int index(std::size_t at, std::int64_t limit, std::string_view what) const {
        const std::int64_t v = integer(at);
        if (v < 0 || v >= limit)
            fail(at, std::string(what) + " " + std::to_string(v) + " is outside 0.." + std::to_string(limit - 1));
        return static_cast<int>(v);
    }

    int count(std::size_t at, std::string_view what) const {
        const std::int64_t v = integer(at);
        if (v < 0 || v > 10'000'000) fail(at, std::string(what) + " must be between 0 and 10000000");
        return static_cast<int>(v);
    }

    std::string text(std::size_t at) const {
        if (at >= tokens_.size()) fail(at, "missing field");
        return std::string(tokens_[at].text);
    }

private:
    int end_column() const {
        if (tokens_.empty()) return 1;
        return tokens_.back().column + static_cast<int>(tokens_.back().text.size());
    }

    const std::string& source_;
    int line_;
    std::vector<token> tokens_;
};

std::vector<record> split_records(std::string_view text, const std::string& source) {
    std::vector<record> out;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view row = text.substr(pos, end - pos);
        ++line;
        if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
        std::vector<token> tokens;
        std::size_t i = 0;
        while (i < row.size()) {
            while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) ++i;
            const std::size_t start = i;
            while (i < row.size() && !std::isspace(static_cast<unsigned char>(row[i]))) ++i;
            if (i > start) tokens.push_back({row.substr(start, i - start), static_cast<int>(start) + 1});
        }
        if (!tokens.empty()) out.emplace_back(source, line, std::move(tokens));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

[[noreturn]] void fail_at_end(const std::string& source, std::string_view text, const std::string& what) {
    int lines = 1;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    throw parse_error(source, lines, 1, what);
}

const record& header(const std::vector<record>& recs, std::string_view kw, const std::string& source,
                     std::string_view text) {
    if (recs.empty()) fail_at_end(source, text, "empty file; expected '" + std::string(kw) + "' header");
    if (recs[0].keyword() != kw) recs[0].fail(0, "expected '" + std::string(kw) + "' header");
    return recs[0];
}

void unknown(const record& r) { r.fail(0, "unknown record '" + std::string(r.keyword()) + "'"); }

std::string pair_text(vertex a, vertex b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// Shared parsing of `a` records into an arc model whose header has been read.
struct arc_reader {
    arc_model model;
    std::vector<char> seen;

    explicit arc_reader(const record& h) {
        h.expect_fields(3, "arcs <n> <C>");
        const int n = h.count(1, "arc count");
        model.circumference = h.integer(2);
        if (model.circumference <= 0) h.fail(2, "circumference must be positive");
        model.items.resize(n);
        seen.assign(n, 0);
    }

    void read(const record& r) {
        r.expect_fields(4, "a <id> <s> <t>");
        const int id = r.index(1, static_cast<int>(model.items.size()), "arc id");
        if (seen[id]) r.fail(1, "duplicate arc id " + std::to_string(id));
        seen[id] = 1;
        const coord s = r.integer(2), t = r.integer(3);
        if (s < 0 || s >= model.circumference) r.fail(2, "arc start is off the circle");
        if (t < 0 || t >= model.circumference) r.fail(3, "arc end is off the circle");
        if (s == t) r.fail(3, "arc start equals arc end");
        model.items[id] = {s, t};
    }

    void finish(const std::string& source, std::string_view text) const {
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) fail_at_end(source, text, "arc " + std::to_string(i) + " is never defined");
    }
};

}  // namespace

graph parse_graph(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    const record& h = header(recs, "graph", source, text);
    h.expect_fields(2, "graph <n>");
    graph g(h.count(1, "vertex count"));
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const record& r = recs[i];
        if (r.keyword() != "e") unknown(r);
        r.expect_fields(3, "e <u> <v>");
        const int u = r.index(1, g.n(), "vertex"), v = r.index(2, g.n(), "vertex");
        if (u == v) r.fail(2, "self-loop on vertex " + std::to_string(u));
        if (!g.add_edge(u, v)) r.fail(1, "duplicate edge " + pair_text(u, v));
    }
    return g;
}

std::string emit_graph(const graph& g) {
    std::ostringstream out;
    out << "graph " << g.n() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

multigraph parse_multigraph(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    const record& h = header(recs, "multigraph", source, text);
    h.expect_fields(2, "multigraph <n>");
    multigraph m{h.count(1, "vertex count"), {}};
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const record& r = recs[i];
        if (r.keyword() != "e") unknown(r);
        r.expect_fields(3, "e <u> <v>");
        const int u = r.index(1, m.n, "vertex"), v = r.index(2, m.n, "vertex");
        if (u == v) r.fail(2, "self-loop on vertex " + std::to_string(u));
        m.edges.emplace_back(u, v);
    }
    return m;
}

std::string emit_multigraph(const multigraph& m) {
    std::ostringstream out;
    out << "multigraph " << m.n << '\n';
    for (auto [u, v] : m.edges) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

interval_model parse_interval_model(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    const record& h = header(recs, "intervals", source, text);
    h.expect_fields(2, "intervals <n>");
    interval_model m;
    m.items.resize(h.count(1, "interval count"));
    std::vector<char> seen(m.items.size(), 0);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const record& r = recs[i];
        if (r.keyword() != "i") unknown(r);
        r.expect_fields(4, "i <id> <l> <r>");
        const int id = r.index(1, static_cast<int>(m.items.size()), "interval id");
        if (seen[id]) r.fail(1, "duplicate interval id " + std::to_string(id));
        seen[id] = 1;
        const coord l = r.integer(2), rr = r.integer(3);
        if (l >= rr) r.fail(3, "interval needs l < r");
        m.items[id] = {l, rr};
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) fail_at_end(source, text, "interval " + std::to_string(i) + " is never defined");
    return m;
}

std::string emit_interval_model(const interval_model& m) {
    std::ostringstream out;
    out << "intervals " << m.items.size() << '\n';
    for (std::size_t i = 0; i < m.items.size(); ++i) out << "i " << i << ' ' << m.items[i].l << ' ' << m.items[i].r << '\n';
    return out.str();
}

arc_model parse_arc_model(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    arc_reader reader(header(recs, "arcs", source, text));
    for (std::size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].keyword() != "a") unknown(recs[i]);
        reader.read(recs[i]);
    }
    reader.finish(source, text);
    return reader.model;
}

std::string emit_arc_model(const arc_model& m) {
    std::ostringstream out;
    out << "arcs " << m.items.size() << ' ' << m.circumference << '\n';
    for (std::size_t i = 0; i < m.items.size(); ++i) out << "a " << i << ' ' << m.items[i].s << ' ' << m.items[i].t << '\n';
    return out.str();
}

fuzzy_arc_model parse_fuzzy_model(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    arc_reader reader(header(recs, "arcs", source, text));
    std::map<vertex_pair, int> lines;
    fuzzy_arc_model m;
    std::vector<const record*> fuzzy;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const record& r = recs[i];
        if (r.keyword() == "a") {
            if (!fuzzy.empty()) r.fail(0, "arc records must precede fuzzy records");
            reader.read(r);
        } else if (r.keyword() == "f") {
            fuzzy.push_back(&r);
        } else {
            unknown(r);
        }
    }
    reader.finish(source, text);
    m.arcs = reader.model;
    const auto needed = one_point_pairs(m.arcs);
    const std::set<vertex_pair> need_set(needed.begin(), needed.end());
    const int n = static_cast<int>(m.arcs.items.size());
    for (const record* r : fuzzy) {
        r->expect_fields(4, "f <id1> <id2> <0|1>");
        int a = r->index(1, n, "arc id"), b = r->index(2, n, "arc id");
        const std::int64_t bit = r->integer(3);
        if (bit != 0 && bit != 1) r->fail(3, "resolution must be 0 or 1");
        if (a == b) r->fail(2, "pair repeats arc " + std::to_string(a));
        if (a > b) std::swap(a, b);
        if (!need_set.contains({a, b})) r->fail(1, "arcs " + pair_text(a, b) + " do not meet in exactly one point");
        if (!m.resolutions.emplace(vertex_pair{a, b}, bit == 1).second)
            r->fail(1, "duplicate resolution for pair " + pair_text(a, b));
    }
    for (const auto& p : needed)
        if (!m.resolutions.contains(p))
            fail_at_end(source, text, "missing resolution for one-point pair " + pair_text(p.first, p.second));
    return m;
}

std::string emit_fuzzy_model(const fuzzy_arc_model& m) {
    std::ostringstream out;
    out << emit_arc_model(m.arcs);
    for (const auto& [p, e] : m.resolutions) out << "f " << p.first << ' ' << p.second << ' ' << (e ? 1 : 0) << '\n';
    return out.str();
}

strip_file parse_strip_structure(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    const record& h = header(recs, "stripstructure", source, text);
    h.expect_fields(2, "stripstructure <graphfile>");
    strip_file f;
    f.graph_ref = h.text(1);
    std::set<int> labels;
    std::map<int, std::size_t> edge_index;
    std::vector<std::vector<char>> defined;  // per edge, per strip node
    std::vector<char> has_strip;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const record& r = recs[i];
        const std::string_view kw = r.keyword();
        if (kw == "sv") {
            r.expect_fields(2, "sv <r>");
            const int label = static_cast<int>(r.integer(1));
            if (!labels.insert(label).second) r.fail(1, "duplicate strip-vertex " + std::to_string(label));
            f.ss.vertices.push_back(label);
        } else if (kw == "se") {
            if (r.size() < 2 || r.size() > 4) r.fail(std::min<std::size_t>(r.size(), 4), "expected 'se <eid> [r1 [r2]]'");
            const int id = static_cast<int>(r.integer(1));
            if (edge_index.contains(id)) r.fail(1, "duplicate strip-edge " + std::to_string(id));
            strip_edge e;
            e.id = id;
            for (std::size_t t = 2; t < r.size(); ++t) {
                const int label = static_cast<int>(r.integer(t));
                if (!labels.contains(label)) r.fail(t, "unknown strip-vertex " + std::to_string(label));
                if (std::find(e.members.begin(), e.members.end(), label) != e.members.end())
                    r.fail(t, "strip-vertex " + std::to_string(label) + " repeated");
                e.members.push_back(label);
            }
            edge_index[id] = f.ss.edges.size();
            f.ss.edges.push_back(std::move(e));
            defined.emplace_back();
            has_strip.push_back(0);
        } else if (kw == "strip" || kw == "jv" || kw == "je" || kw == "cert") {
            if (r.size() < 2) r.fail(1, "missing strip-edge id");
            const int id = static_cast<int>(r.integer(1));
            const auto it = edge_index.find(id);
            if (it == edge_index.end()) r.fail(1, "unknown strip-edge " + std::to_string(id));
            strip_edge& e = f.ss.edges[it->second];
            auto& seen = defined[it->second];
            if (kw == "strip") {
                r.expect_fields(3, "strip <eid> <nJ>");
                if (has_strip[it->second]) r.fail(0, "strip " + std::to_string(id) + " declared twice");
                has_strip[it->second] = 1;
                const int nj = r.count(2, "strip size");
                e.s.j = graph(nj);
                e.s.nodes.assign(nj, {});
                seen.assign(nj, 0);
            } else if (kw == "cert") {
                if (r.size() < 3) r.fail(2, "expected 'cert <eid> fuzzy <file>' or 'cert <eid> alpha4'");
                if (e.cert.kind != certificate_kind::none) r.fail(0, "second certificate for strip-edge " + std::to_string(id));
                const std::string kind = r.text(2);
                if (kind == "fuzzy") {
                    r.expect_fields(4, "cert <eid> fuzzy <file.fam>");
                    e.cert.kind = certificate_kind::fuzzy;
                    e.cert.source = r.text(3);
                } else if (kind == "alpha4") {
                    r.expect_fields(3, "cert <eid> alpha4");
                    e.cert.kind = certificate_kind::alpha4;
                } else {
                    r.fail(2, "unknown certificate kind '" + kind + "'");
                }
            } else {
                if (!has_strip[it->second]) r.fail(0, "strip " + std::to_string(id) + " used before its 'strip' line");
                const int nj = e.s.j.n();
                if (kw == "jv") {
                    r.expect_fields(5, "jv <eid> <jid> g|z <id>");
                    const int jid = r.index(2, nj, "strip node");
                    if (seen[jid]) r.fail(2, "strip node " + std::to_string(jid) + " defined twice");
                    seen[jid] = 1;
                    const std::string kind = r.text(3);
                    const int ref = static_cast<int>(r.integer(4));
                    if (kind == "g") {
                        if (ref < 0) r.fail(4, "host vertex must be nonnegative");
                        e.s.nodes[jid] = {strip_node_kind::host, ref};
                    } else if (kind == "z") {
                        if (!labels.contains(ref)) r.fail(4, "unknown strip-vertex " + std::to_string(ref));
                        e.s.nodes[jid] = {strip_node_kind::marker, ref};
                    } else {
                        r.fail(3, "expected 'g' or 'z', got '" + kind + "'");
                    }
                } else {
                    r.expect_fields(4, "je <eid> <j1> <j2>");
                    const int a = r.index(2, nj, "strip node"), b = r.index(3, nj, "strip node");
                    if (a == b) r.fail(3, "self-loop in strip " + std::to_string(id));
                    if (!e.s.j.add_edge(a, b)) r.fail(2, "duplicate strip edge " + pair_text(a, b));
                }
            }
        } else {
            unknown(r);
        }
    }
    for (std::size_t i = 0; i < f.ss.edges.size(); ++i) {
        const int id = f.ss.edges[i].id;
        if (!has_strip[i]) fail_at_end(source, text, "strip-edge " + std::to_string(id) + " has no 'strip' line");
        for (std::size_t x = 0; x < defined[i].size(); ++x)
            if (!defined[i][x])
                fail_at_end(source, text, "strip " + std::to_string(id) + " node " + std::to_string(x) + " is never defined");
    }
    return f;
}

std::string emit_strip_structure(const strip_file& f) {
    std::ostringstream out;
    out << "stripstructure " << f.graph_ref << '\n';
    for (int r : f.ss.vertices) out << "sv " << r << '\n';
    for (const auto& e : f.ss.edges) {
        out << "se " << e.id;
        for (int r : e.members) out << ' ' << r;
        out << '\n';
    }
    for (const auto& e : f.ss.edges) {
        out << "strip " << e.id << ' ' << e.s.j.n() << '\n';
        for (std::size_t x = 0; x < e.s.nodes.size(); ++x)
            out << "jv " << e.id << ' ' << x << (e.s.nodes[x].kind == strip_node_kind::host ? " g " : " z ")
                << e.s.nodes[x].id << '\n';
        for (auto [a, b] : e.s.j.edges()) out << "je " << e.id << ' ' << a << ' ' << b << '\n';
        if (e.cert.kind == certificate_kind::fuzzy) out << "cert " << e.id << " fuzzy " << e.cert.source << '\n';
        if (e.cert.kind == certificate_kind::alpha4) out << "cert " << e.id << " alpha4\n";
    }
    return out.str();
}

wis_instance parse_wis(std::string_view text, const std::string& source) {
    const auto recs = split_records(text, source);
    const record& h = header(recs, "wis", source, text);
    h.expect_fields(4, "wis <n> <k'> <K'>");
    wis_instance w;
    const int n = h.count(1, "vertex count");
    w.k_card = h.count(2, "cardinality target");
    w.k_weight = h.integer(3);
    w.g = graph(n);
    w.weights.assign(n, 0);
    w.tags.assign(n, "");
    std::vector<char> seen(n, 0);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const record& r = recs[i];
        if (r.keyword() == "v") {
            r.expect_fields(4, "v <id> <weight> <tag>");
            const int id = r.index(1, n, "vertex");
            if (seen[id]) r.fail(1, "duplicate vertex " + std::to_string(id));
            seen[id] = 1;
            w.weights[id] = r.integer(2);
            if (w.weights[id] < 0) r.fail(2, "weights must be nonnegative");
            w.tags[id] = r.text(3);
        } else if (r.keyword() == "e") {
            r.expect_fields(3, "e <u> <v>");
            const int u = r.index(1, n, "vertex"), v = r.index(2, n, "vertex");
            if (u == v) r.fail(2, "self-loop on vertex " + std::to_string(u));
            if (!w.g.add_edge(u, v)) r.fail(1, "duplicate edge " + pair_text(u, v));
        } else {
            unknown(r);
        }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) fail_at_end(source, text, "vertex " + std::to_string(v) + " has no 'v' line");
    // Selection cliques are named by the tag prefix before the first ':'.
    std::map<std::string, int> cliques;
    for (int v = 0; v < n; ++v) {
        const std::string key = w.tags[v].substr(0, w.tags[v].find(':'));
        const auto [it, fresh] = cliques.emplace(key, static_cast<int>(cliques.size()));
        w.clique_of.push_back(it->second);
    }
    w.clique_count = static_cast<int>(cliques.size());
    w.trivial = n == 1 && (w.tags[0] == "trivial-yes" || w.tags[0] == "trivial-no");
    return w;
}

std::string emit_wis(const wis_instance& w) {
    std::ostringstream out;
    out << "wis " << w.g.n() << ' ' << w.k_card << ' ' << w.k_weight << '\n';
    for (std::size_t v = 0; v < w.weights.size(); ++v) out << "v " << v << ' ' << w.weights[v] << ' ' << w.tags[v] << '\n';
    for (auto [u, v] : w.g.edges()) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

std::vector<int> parse_colors(std::string_view text, int n, const std::string& source) {
    const auto recs = split_records(text, source);
    std::vector<int> colors(n, 0);
    for (const record& r : recs) {
        if (r.keyword() != "c") unknown(r);
        r.expect_fields(3, "c <vertex> <color>");
        const int v = r.index(1, n, "vertex");
        if (colors[v]) r.fail(1, "vertex " + std::to_string(v) + " colored twice");
        const std::int64_t c = r.integer(2);
        if (c < 1 || c > n) r.fail(2, "color must be between 1 and the vertex count");
        colors[v] = static_cast<int>(c);
    }
    for (int v = 0; v < n; ++v)
        if (!colors[v]) fail_at_end(source, text, "vertex " + std::to_string(v) + " has no color");
    return colors;
}

std::string emit_colors(const std::vector<int>& colors) {
    std::ostringstream out;
    for (std::size_t v = 0; v < colors.size(); ++v) out << "c " << v << ' ' << colors[v] << '\n';
    return out.str();
}

std::vector<std::string> parse_provenance(std::string_view text, int n, const std::string& source) {
    const auto recs = split_records(text, source);
    std::vector<std::optional<std::string>> labels(n);
    for (const record& r : recs) {
        if (r.keyword() != "p") unknown(r);
        r.expect_fields(3, "p <vertex> <label>");
        const int v = r.index(1, n, "vertex");
        if (labels[v]) r.fail(1, "vertex " + std::to_string(v) + " labelled twice");
        labels[v] = r.text(2);
    }
    std::vector<std::string> out;
    for (int v = 0; v < n; ++v) {
        if (!labels[v]) fail_at_end(source, text, "vertex " + std::to_string(v) + " has no label");
        out.push_back(*labels[v]);
    }
    return out;
}

std::string emit_provenance(const std::vector<std::string>& labels) {
    std::ostringstream out;
    for (std::size_t v = 0; v < labels.size(); ++v) out << "p " << v << ' ' << labels[v] << '\n';
    return out.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write " + path.string());
    out << text;
    if (!out) throw input_error("failed writing " + path.string());
}

graph load_graph(const std::filesystem::path& path) { return parse_graph(read_file(path), path.string()); }

strip_file load_strip_structure(const std::filesystem::path& path) {
    strip_file f = parse_strip_structure(read_file(path), path.string());
    for (auto& e : f.ss.edges) {
        if (e.cert.kind != certificate_kind::fuzzy) continue;
        const std::filesystem::path model_path = path.parent_path() / e.cert.source;
        fuzzy_arc_model m = parse_fuzzy_model(read_file(model_path), model_path.string());
        if (m.arcs.items.size() != e.s.host_positions().size())
            throw input_error(path.string() + ": fuzzy certificate for strip-edge " + std::to_string(e.id) + " has " +
                              std::to_string(m.arcs.items.size()) + " arcs but the strip has " +
                              std::to_string(e.s.host_positions().size()) + " host nodes");
        e.cert.model = std::move(m);
    }
    return f;
}

}  // namespace igm
