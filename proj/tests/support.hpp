#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <utility>

#include "igm/graph.hpp"
#include "igm/line_graph.hpp"
#include "igm/models.hpp"
#include "igm/oracles.hpp"
#include "igm/strip.hpp"

namespace igm::testing {

using rng_t = std::mt19937_64;

inline graph make_graph(int n, std::initializer_list<std::pair<int, int>> es) {
    graph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    return g;
}

inline int uniform(rng_t& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline graph random_graph(rng_t& rng, int n, double p) {
    graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// Left and right endpoints both strictly increasing: no containment.
inline interval_model random_proper_intervals(rng_t& rng, int n) {
    interval_model m;
    coord l = 0, prev_r = -1;
    for (int i = 0; i < n; ++i) {
        l += uniform(rng, 1, 3);
        const coord r = std::max<coord>(l + uniform(rng, 1, 5), prev_r + 1);
        m.items.push_back({l, r});
        prev_r = r;
    }
    return m;
}

inline arc_model random_arcs(rng_t& rng, int n, coord circumference, int max_len) {
    arc_model m;
    m.circumference = circumference;
    for (int i = 0; i < n; ++i) {
        const coord s = uniform(rng, 0, static_cast<int>(circumference) - 1);
        const coord len = uniform(rng, 1, std::min<int>(max_len, static_cast<int>(circumference) - 1));
        m.items.push_back({s, (s + len) % circumference});
    }
    return m;
}

inline arc_model random_long_proper_arcs(rng_t& rng, int n) {
    for (;;) {
        const coord c = uniform(rng, 3 * n + 6, 6 * n + 12);
        arc_model m = random_arcs(rng, n, c, static_cast<int>(c / 3) - 1);
        const model_report r = validate(m);
        if (r.proper && r.long_arcs) return m;
    }
}

inline fuzzy_arc_model random_fuzzy(rng_t& rng, int n) {
    fuzzy_arc_model f;
    const coord c = uniform(rng, n + 2, 3 * n + 4);
    f.arcs = random_arcs(rng, n, c, std::max<int>(1, static_cast<int>(c / 3)));
    std::bernoulli_distribution coin(0.5);
    for (const auto& p : one_point_pairs(f.arcs)) f.resolutions[p] = coin(rng);
    return f;
}

inline multigraph random_multigraph(rng_t& rng, int vertices, int edges) {
    multigraph m{vertices, {}};
    for (int i = 0; i < edges; ++i) {
        const int a = uniform(rng, 0, vertices - 1);
        int b = uniform(rng, 0, vertices - 2);
        if (b >= a) ++b;
        m.edges.emplace_back(a, b);
    }
    return m;
}

// Line graph of a random connected multigraph with the given number of edges.
inline graph random_line_graph(rng_t& rng, int edges) {
    for (;;) {
        const graph g = line_graph(random_multigraph(rng, uniform(rng, 2, edges + 1), edges));
        if (is_connected(g)) return g;
    }
}

struct structured_graph {
    graph g;
    strip_structure ss;
};

// Line graph of a random multigraph on `pre_vertices` vertices with `pre_edges` edges, plus up
// to `stripes` single-member stripes hung off random strip-vertices. Each stripe is a proper
// interval graph whose boundary is the clique at its left end; the total vertex count stays
// within `max_n`. Retries until the result is connected, claw-free and validates.
inline structured_graph random_structured_graph(rng_t& rng, int pre_vertices, int pre_edges, int stripes,
                                                int max_n) {
    for (;;) {
        const multigraph m = random_multigraph(rng, pre_vertices, pre_edges);
        graph base = line_graph(m);
        auto lss = line_graph_strip_structure(base);
        if (!lss) continue;
        structured_graph out{base, *lss};
        for (int s = 0; s < stripes && !out.ss.vertices.empty(); ++s) {
            const int room = max_n - out.g.n();
            if (room < 1) break;
            const int size = uniform(rng, 1, std::min(room, 5));
            const int label = out.ss.vertices[uniform(rng, 0, static_cast<int>(out.ss.vertices.size()) - 1)];
            const vertex_list clique = out.ss.clique_at(label);
            const interval_model im = random_proper_intervals(rng, size);
            const graph inner = realize(im);
            vertex_list boundary;
            for (int i = 0; i < size; ++i)
                if (im.items[i].l <= im.items[0].r) boundary.push_back(i);
            const int first = out.g.n();
            graph g(first + size);
            for (auto [u, v] : out.g.edges()) g.add_edge(u, v);
            for (auto [u, v] : inner.edges()) g.add_edge(first + u, first + v);
            for (int b : boundary)
                for (vertex c : clique) g.add_edge(first + b, c);
            strip_edge e;
            e.id = static_cast<int>(out.ss.edges.size());
            e.members = {label};
            e.s.j = graph(size + 1);
            for (auto [u, v] : inner.edges()) e.s.j.add_edge(u, v);
            for (int b : boundary) e.s.j.add_edge(size, b);
            for (int i = 0; i < size; ++i) e.s.nodes.push_back({strip_node_kind::host, first + i});
            e.s.nodes.push_back({strip_node_kind::marker, label});
            out.ss.edges.push_back(std::move(e));
            out.g = std::move(g);
        }
        if (out.g.n() > max_n || !is_connected(out.g) || !star_free(out.g, 3)) continue;
        if (!validate_strip_structure(out.g, out.ss).ok()) continue;
        return out;
    }
}

// Hand transcription of the illustrated claw-free graph and its strip-structure.
inline graph figure_graph() {
    return make_graph(16, {{1, 3},  {0, 2},  {0, 4},  {0, 5},   {2, 5},   {5, 6},   {4, 5},   {4, 6},
                           {6, 1},  {6, 3},  {7, 1},  {7, 3},   {8, 0},   {8, 2},   {9, 10},  {10, 7},
                           {9, 8},  {11, 12}, {13, 7}, {13, 10}, {11, 9},  {11, 8},  {13, 12}, {14, 8},
                           {14, 11}, {15, 12}, {15, 11}, {9, 14}});
}

inline strip_edge single_host_edge(int id, std::vector<int> members, vertex host) {
    strip_edge e;
    e.id = id;
    e.members = members;
    e.s.j = graph(1 + static_cast<int>(members.size()));
    e.s.nodes.push_back({strip_node_kind::host, host});
    for (int r : members) {
        e.s.j.add_edge(0, static_cast<int>(e.s.nodes.size()));
        e.s.nodes.push_back({strip_node_kind::marker, r});
    }
    return e;
}

inline strip_structure figure_structure() {
    strip_structure ss;
    ss.vertices = {0, 1, 2, 3, 4, 5};
    ss.edges.push_back(single_host_edge(0, {0, 2}, 8));  // a
    ss.edges.push_back(single_host_edge(1, {2}, 14));    // b
    {
        strip_edge c;  // two boundaries {11} and {12}, interior {15}
        c.id = 2;
        c.members = {2, 5};
        c.s.j = make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {3, 0}, {4, 1}});
        c.s.nodes = {{strip_node_kind::host, 11}, {strip_node_kind::host, 12}, {strip_node_kind::host, 15},
                     {strip_node_kind::marker, 2}, {strip_node_kind::marker, 5}};
        ss.edges.push_back(std::move(c));
    }
    ss.edges.push_back(single_host_edge(3, {2, 4}, 9));   // d
    ss.edges.push_back(single_host_edge(4, {4, 3}, 10));  // e
    ss.edges.push_back(single_host_edge(5, {5, 3}, 13));  // f
    ss.edges.push_back(single_host_edge(6, {1, 3}, 7));   // g
    {
        strip_edge h;  // seven hosts, boundaries {0,2} and {1,3}
        h.id = 7;
        h.members = {0, 1};
        h.s.j = make_graph(9, {{1, 3}, {0, 2}, {0, 4}, {0, 5}, {2, 5}, {5, 6}, {4, 5}, {4, 6}, {6, 1}, {6, 3},
                               {7, 0}, {7, 2}, {8, 1}, {8, 3}});
        for (vertex v = 0; v < 7; ++v) h.s.nodes.push_back({strip_node_kind::host, v});
        h.s.nodes.push_back({strip_node_kind::marker, 0});
        h.s.nodes.push_back({strip_node_kind::marker, 1});
        ss.edges.push_back(std::move(h));
    }
    return ss;
}

}  // namespace igm::testing
