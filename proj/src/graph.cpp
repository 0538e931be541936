#include "igm/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "igm/errors.hpp"

namespace igm {

graph::graph(int n) : n_(n) {
    if (n < 0) throw input_error("negative vertex count");
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
    nbrs_.resize(n);
}

bool graph::add_edge(vertex u, vertex v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw input_error("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v)) return false;
    adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
    adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
    nbrs_[u].insert(std::upper_bound(nbrs_[u].begin(), nbrs_[u].end(), v), v);
    nbrs_[v].insert(std::upper_bound(nbrs_[v].begin(), nbrs_[v].end(), u), u);
    ++m_;
    return true;
}

std::vector<std::pair<vertex, vertex>> graph::edges() const {
    std::vector<std::pair<vertex, vertex>> out;
    out.reserve(m_);
    for (vertex u = 0; u < n_; ++u)
        for (vertex v : nbrs_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

graph graph::induced(std::span<const vertex> vs) const {
    graph out(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (adjacent(vs[i], vs[j])) out.add_edge(static_cast<vertex>(i), static_cast<vertex>(j));
    return out;
}

pattern::pattern(graph g) : g_(std::move(g)) {
    if (g_.n() < 1) throw input_error("pattern must have at least one vertex");
    connected_ = igm::is_connected(g_);
    complete_ = g_.edge_count() == g_.n() * (g_.n() - 1) / 2;
}

vertex_list occurrence::sorted_vertices() const {
    vertex_list out = vertices;
    std::sort(out.begin(), out.end());
    return out;
}

namespace shapes {

graph path(int n) {
    graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

graph cycle(int n) {
    graph g = path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

graph complete(int n) {
    graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

graph star(int leaves) {
    graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

graph empty(int n) { return graph(n); }

graph disjoint_union(const graph& a, const graph& b) {
    graph g(a.n() + b.n());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(u + a.n(), v + a.n());
    return g;
}

}  // namespace shapes

std::vector<vertex_list> connected_components(const graph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<vertex_list> out;
    for (vertex s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        vertex_list members;
        std::queue<vertex> q;
        q.push(s);
        comp[s] = static_cast<int>(out.size());
        while (!q.empty()) {
            vertex u = q.front();
            q.pop();
            members.push_back(u);
            for (vertex v : g.neighbors(u))
                if (comp[v] < 0) {
                    comp[v] = comp[s];
                    q.push(v);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

bool is_connected(const graph& g) { return connected_components(g).size() <= 1; }

bool is_clique(const graph& g, std::span<const vertex> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.adjacent(vs[i], vs[j])) return false;
    return true;
}

bool is_independent(const graph& g, std::span<const vertex> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j] || g.adjacent(vs[i], vs[j])) return false;
    return true;
}

}  // namespace igm
