#include "igm/strip.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "igm/errors.hpp"
#include "igm/line_graph.hpp"

namespace igm {

namespace {

std::string pair_text(vertex u, vertex v) { return std::to_string(u) + "-" + std::to_string(v); }

bool is_marker(const strip& s, vertex x) { return s.nodes[x].kind == strip_node_kind::marker; }

// A claw centre and three pairwise non-adjacent neighbours, if any.
std::optional<std::array<vertex, 4>> find_claw(const graph& g) {
    for (vertex c = 0; c < g.n(); ++c) {
        const auto nb = g.neighbors(c);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (g.adjacent(nb[a], nb[b])) continue;
                for (std::size_t d = b + 1; d < nb.size(); ++d)
                    if (!g.adjacent(nb[a], nb[d]) && !g.adjacent(nb[b], nb[d]))
                        return std::array<vertex, 4>{c, nb[a], nb[b], nb[d]};
            }
    }
    return std::nullopt;
}

}  // namespace

vertex_list strip::host_positions() const {
    vertex_list out;
    for (vertex x = 0; x < static_cast<int>(nodes.size()); ++x)
        if (!is_marker(*this, x)) out.push_back(x);
    return out;
}

vertex_list strip::marker_positions() const {
    vertex_list out;
    for (vertex x = 0; x < static_cast<int>(nodes.size()); ++x)
        if (is_marker(*this, x)) out.push_back(x);
    return out;
}

vertex_list strip::host_vertices() const {
    vertex_list out;
    for (const auto& node : nodes)
        if (node.kind == strip_node_kind::host) out.push_back(node.id);
    return out;
}

std::optional<vertex> strip::marker_of(int label) const {
    for (vertex x = 0; x < static_cast<int>(nodes.size()); ++x)
        if (is_marker(*this, x) && nodes[x].id == label) return x;
    return std::nullopt;
}

vertex_list strip::boundary(int label) const {
    vertex_list out;
    const auto z = marker_of(label);
    if (!z || *z >= j.n()) return out;
    for (vertex x : j.neighbors(*z))
        if (!is_marker(*this, x)) out.push_back(nodes[x].id);
    std::sort(out.begin(), out.end());
    return out;
}

vertex_list strip::interior() const {
    vertex_list out;
    for (vertex x = 0; x < static_cast<int>(nodes.size()); ++x) {
        if (is_marker(*this, x)) continue;
        bool touches = false;
        if (x < j.n())
            for (vertex y : j.neighbors(x)) touches = touches || is_marker(*this, y);
        if (!touches) out.push_back(nodes[x].id);
    }
    return out;
}

strip_kind classify_strip(const strip& s) {
    const vertex_list markers = s.marker_positions();
    if (s.j.n() == 3 && markers.size() == 2 && !s.j.adjacent(markers[0], markers[1]) && s.j.edge_count() == 2)
        return strip_kind::spot;
    for (vertex x = 0; x < s.j.n(); ++x) {
        int touching = 0;
        for (vertex y : s.j.neighbors(x)) touching += is_marker(s, y) ? 1 : 0;
        if (touching > 1) return strip_kind::neither;
    }
    return strip_kind::stripe;
}

std::vector<std::size_t> strip_structure::edges_at(int label) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (std::find(edges[i].members.begin(), edges[i].members.end(), label) != edges[i].members.end())
            out.push_back(i);
    return out;
}

vertex_list strip_structure::clique_at(int label) const {
    std::set<vertex> acc;
    for (std::size_t i : edges_at(label)) {
        const auto b = edges[i].s.boundary(label);
        acc.insert(b.begin(), b.end());
    }
    return {acc.begin(), acc.end()};
}

bool strip_report::ok() const {
    return shape.pass && strips.pass && partition.pass && claw_free.pass && markers.pass && cliques.pass &&
           edge_coverage.pass;
}

strip_report validate_strip_structure(const graph& g, const strip_structure& ss) {
    strip_report rep;
    const std::set<int> labels(ss.vertices.begin(), ss.vertices.end());
    if (labels.size() != ss.vertices.size()) rep.shape.fail("duplicate strip-vertex label");
    if (ss.edges.empty() && g.n() > 0) rep.shape.fail("no strip-edges");
    std::set<int> ids;
    bool has_empty = false;
    // Strips whose node table is usable for the remaining checks.
    std::vector<char> usable(ss.edges.size(), 1);
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        const strip_edge& e = ss.edges[i];
        const std::string name = "strip-edge " + std::to_string(e.id);
        if (!ids.insert(e.id).second) rep.shape.fail("duplicate strip-edge id " + std::to_string(e.id));
        if (e.members.size() > 2) rep.shape.fail(name + " has more than 2 members");
        if (e.members.size() == 2 && e.members[0] == e.members[1]) rep.shape.fail(name + " repeats a member");
        for (int r : e.members)
            if (!labels.contains(r)) rep.shape.fail(name + " references unknown strip-vertex " + std::to_string(r));
        has_empty = has_empty || e.members.empty();
        if (static_cast<int>(e.s.nodes.size()) != e.s.j.n()) {
            rep.shape.fail(name + " node table does not match its graph");
            usable[i] = 0;
            continue;
        }
        for (const auto& node : e.s.nodes)
            if (node.kind == strip_node_kind::host && (node.id < 0 || node.id >= g.n())) {
                rep.shape.fail(name + " maps to unknown vertex " + std::to_string(node.id));
                usable[i] = 0;
            }
    }
    if (has_empty && ss.edges.size() > 1) rep.warnings.push_back("empty strip-edge alongside other strip-edges");

    // Strip definition.
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        if (!usable[i]) continue;
        const strip& s = ss.edges[i].s;
        const std::string name = "strip-edge " + std::to_string(ss.edges[i].id);
        const vertex_list markers = s.marker_positions();
        const vertex_list hosts = s.host_positions();
        if (!is_independent(s.j, markers)) rep.strips.fail(name + ": markers are not independent");
        if (hosts.empty()) rep.strips.fail(name + ": no host vertices");
        for (vertex z : markers) {
            const auto nb = s.j.neighbors(z);
            if (nb.empty()) rep.strips.fail(name + ": marker " + std::to_string(s.nodes[z].id) + " has no neighbours");
            if (!is_clique(s.j, nb))
                rep.strips.fail(name + ": neighbourhood of marker " + std::to_string(s.nodes[z].id) +
                                " is not a clique");
        }
        std::set<vertex> seen;
        for (vertex x : hosts)
            if (!seen.insert(s.nodes[x].id).second)
                rep.strips.fail(name + ": vertex " + std::to_string(s.nodes[x].id) + " appears twice");
        for (std::size_t a = 0; a < hosts.size(); ++a)
            for (std::size_t b = a + 1; b < hosts.size(); ++b) {
                const vertex u = s.nodes[hosts[a]].id, v = s.nodes[hosts[b]].id;
                if (u != v && s.j.adjacent(hosts[a], hosts[b]) != g.adjacent(u, v))
                    rep.strips.fail(name + ": adjacency of " + pair_text(u, v) + " differs from the graph");
            }
    }

    // Partition of V(G).
    std::vector<std::vector<int>> owners(g.n());
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        if (!usable[i]) continue;
        std::set<vertex> mine;
        for (vertex v : ss.edges[i].s.host_vertices()) mine.insert(v);
        for (vertex v : mine) owners[v].push_back(ss.edges[i].id);
    }
    for (vertex v = 0; v < g.n(); ++v) {
        if (owners[v].empty()) rep.partition.fail("vertex " + std::to_string(v) + " is in no strip");
        if (owners[v].size() > 1)
            rep.partition.fail("vertex " + std::to_string(v) + " is in strip-edges " + std::to_string(owners[v][0]) +
                               " and " + std::to_string(owners[v][1]));
    }

    // Claw-freeness of each J.
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        if (!usable[i]) continue;
        if (auto claw = find_claw(ss.edges[i].s.j))
            rep.claw_free.fail("strip-edge " + std::to_string(ss.edges[i].id) + ": claw centred at node " +
                               std::to_string((*claw)[0]));
    }

    // One marker per member and nothing else.
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        if (!usable[i]) continue;
        const strip_edge& e = ss.edges[i];
        const std::string name = "strip-edge " + std::to_string(e.id);
        std::map<int, int> count;
        for (vertex z : e.s.marker_positions()) ++count[e.s.nodes[z].id];
        for (int r : e.members)
            if (count[r] != 1)
                rep.markers.fail(name + ": strip-vertex " + std::to_string(r) + " has " + std::to_string(count[r]) +
                                 " markers");
        for (const auto& [r, c] : count)
            if (c > 0 && std::find(e.members.begin(), e.members.end(), r) == e.members.end())
                rep.markers.fail(name + ": marker for non-member " + std::to_string(r));
    }

    // C(r) cliques.
    std::vector<vertex_list> cliques;
    for (int r : ss.vertices) {
        vertex_list c;
        std::set<vertex> acc;
        for (std::size_t i : ss.edges_at(r))
            if (usable[i])
                for (vertex v : ss.edges[i].s.boundary(r)) acc.insert(v);
        c.assign(acc.begin(), acc.end());
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b)
                if (!g.adjacent(c[a], c[b]))
                    rep.cliques.fail("C(" + std::to_string(r) + "): " + pair_text(c[a], c[b]) + " not adjacent");
        cliques.push_back(std::move(c));
    }

    // Every edge of G is inside a strip or inside some C(r).
    std::vector<std::vector<std::size_t>> strips_of(g.n());
    for (std::size_t i = 0; i < ss.edges.size(); ++i)
        if (usable[i])
            for (vertex v : ss.edges[i].s.host_vertices()) strips_of[v].push_back(i);
    for (const auto& [u, v] : g.edges()) {
        bool ok = false;
        for (std::size_t i : strips_of[u])
            ok = ok || std::find(strips_of[v].begin(), strips_of[v].end(), i) != strips_of[v].end();
        for (const auto& c : cliques)
            ok = ok || (std::binary_search(c.begin(), c.end(), u) && std::binary_search(c.begin(), c.end(), v));
        if (!ok) rep.edge_coverage.fail("edge " + pair_text(u, v) + " is in no strip and no C(r)");
    }
    return rep;
}

covered_subgraph covered_by(const strip_structure& ss, const matching& m) {
    std::set<vertex> used;
    for (const auto& o : m.occurrences) used.insert(o.vertices.begin(), o.vertices.end());
    covered_subgraph out;
    std::set<int> members;
    for (const auto& e : ss.edges) {
        const auto hv = e.s.host_vertices();
        if (std::none_of(hv.begin(), hv.end(), [&](vertex v) { return used.contains(v); })) continue;
        out.edges.push_back(e.id);
        members.insert(e.members.begin(), e.members.end());
    }
    out.vertices.assign(members.begin(), members.end());
    for (int r : ss.vertices) {
        const auto c = ss.clique_at(r);
        if (std::any_of(c.begin(), c.end(), [&](vertex v) { return used.contains(v); }))
            out.covered_vertices.push_back(r);
    }
    return out;
}

strip_structure trivial_strip_structure(const graph& g) {
    strip_edge e;
    e.s.j = g;
    for (vertex v = 0; v < g.n(); ++v) e.s.nodes.push_back({strip_node_kind::host, v});
    return strip_structure{{}, {std::move(e)}};
}

std::optional<strip_structure> line_graph_strip_structure(const graph& g) {
    strip_structure out;
    int next_label = 0;
    for (const vertex_list& comp : connected_components(g)) {
        const auto pre = recognize_line_graph(g.induced(comp));
        if (!pre) return std::nullopt;
        std::vector<int> degree(pre->n, 0);
        for (const auto& [a, b] : pre->edges) {
            ++degree[a];
            ++degree[b];
        }
        std::vector<char> keep(pre->n, 0);
        for (int v = 0; v < pre->n; ++v) keep[v] = degree[v] > 1;
        // A single-edge pre-image has two pendant ends; keep the first.
        if (pre->edges.size() == 1) keep[pre->edges[0].first] = 1;
        std::vector<int> label(pre->n, -1);
        for (int v = 0; v < pre->n; ++v)
            if (keep[v]) {
                label[v] = next_label++;
                out.vertices.push_back(label[v]);
            }
        for (std::size_t i = 0; i < pre->edges.size(); ++i) {
            const auto [a, b] = pre->edges[i];
            strip_edge e;
            e.id = static_cast<int>(out.edges.size());
            for (int end : {a, b})
                if (keep[end]) e.members.push_back(label[end]);
            if (e.members.size() == 2 && pre->edges.size() == 1) e.members.pop_back();
            e.s.j = graph(1 + static_cast<int>(e.members.size()));
            e.s.nodes.push_back({strip_node_kind::host, comp[i]});
            for (int r : e.members) {
                e.s.j.add_edge(0, static_cast<int>(e.s.nodes.size()));
                e.s.nodes.push_back({strip_node_kind::marker, r});
            }
            out.edges.push_back(std::move(e));
        }
    }
    if (out.edges.empty()) return std::nullopt;
    return out;
}

bool conformance_report::ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

conformance_report conformance_check(const strip_structure& ss, const oracle_limits& limits) {
    conformance_report rep;
    for (const auto& e : ss.edges) {
        conformance_entry entry{e.id, false, {}};
        const int markers = static_cast<int>(e.s.marker_positions().size());
        switch (classify_strip(e.s)) {
            case strip_kind::spot:
                entry.pass = true;
                entry.reason = "spot";
                break;
            case strip_kind::neither:
                entry.reason = "neither spot nor stripe";
                break;
            case strip_kind::stripe:
                if (markers < 1 || markers > 2) {
                    entry.reason = "stripe with " + std::to_string(markers) + " markers";
                } else if (e.cert.kind == certificate_kind::fuzzy) {
                    if (!e.cert.model) {
                        entry.reason = "fuzzy certificate without a model";
                    } else {
                        const vertex_list hosts = e.s.host_positions();
                        bool fits = e.cert.model->arcs.items.size() == hosts.size();
                        try {
                            fits = fits && realize(*e.cert.model) == e.s.j.induced(hosts);
                        } catch (const input_error&) {
                            fits = false;
                        }
                        entry.pass = fits;
                        entry.reason = fits ? "fuzzy model realizes the strip" : "fuzzy model does not realize the strip";
                    }
                } else {
                    const int alpha = brute_force_mis(e.s.j, limits).size;
                    entry.pass = alpha <= 4;
                    entry.reason = "independence number " + std::to_string(alpha);
                }
                break;
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace igm
