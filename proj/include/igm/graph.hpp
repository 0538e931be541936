#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace igm {

using vertex = int;
using vertex_list = std::vector<vertex>;

// Simple undirected graph on vertices 0..n-1.
class graph {
public:
    graph() = default;
    explicit graph(int n);

    int n() const { return n_; }
    bool adjacent(vertex u, vertex v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }
    std::span<const vertex> neighbors(vertex v) const { return nbrs_[v]; }
    int degree(vertex v) const { return static_cast<int>(nbrs_[v].size()); }
    int edge_count() const { return m_; }

    // Returns false if the edge already exists. Throws on self-loops or bad ids.
    bool add_edge(vertex u, vertex v);
    std::vector<std::pair<vertex, vertex>> edges() const;

    // Induced subgraph; vertex i of the result is vs[i].
    graph induced(std::span<const vertex> vs) const;

    friend bool operator==(const graph& a, const graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<vertex_list> nbrs_;
};

struct multigraph {
    int n = 0;
    std::vector<std::pair<vertex, vertex>> edges;

    friend bool operator==(const multigraph&, const multigraph&) = default;
};

// Connected host-side pattern H with cached shape flags.
class pattern {
public:
    explicit pattern(graph g);

    const graph& g() const { return g_; }
    int h() const { return g_.n(); }
    bool is_connected() const { return connected_; }
    bool is_complete() const { return complete_; }

private:
    graph g_;
    bool connected_ = false;
    bool complete_ = false;
};

// vertices[i] is the host image of pattern vertex i.
struct occurrence {
    vertex_list vertices;

    vertex_list sorted_vertices() const;
    friend bool operator==(const occurrence&, const occurrence&) = default;
    friend auto operator<=>(const occurrence&, const occurrence&) = default;
};

struct matching {
    std::vector<occurrence> occurrences;

    int size() const { return static_cast<int>(occurrences.size()); }
};

namespace shapes {
graph path(int n);
graph cycle(int n);
graph complete(int n);
graph star(int leaves);
graph empty(int n);
graph disjoint_union(const graph& a, const graph& b);
}  // namespace shapes

bool is_connected(const graph& g);
std::vector<vertex_list> connected_components(const graph& g);
bool is_clique(const graph& g, std::span<const vertex> vs);
bool is_independent(const graph& g, std::span<const vertex> vs);

}  // namespace igm
