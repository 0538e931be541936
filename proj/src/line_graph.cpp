#include "igm/line_graph.hpp"

#include <array>
#include <string>

#include "igm/embedding.hpp"
#include "igm/errors.hpp"
#include "igm/oracles.hpp"

namespace igm {

namespace {

using edge_list = std::vector<std::pair<vertex, vertex>>;

// The nine minimal non-line graphs.
const std::array<std::pair<int, edge_list>, 9>& beineke_graphs() {
    static const std::array<std::pair<int, edge_list>, 9> list{{
        {4, {{0, 3}, {1, 3}, {2, 3}}},
        {5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}}},
        {5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}},
        {6, {{0, 1}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {4, 5}}},
        {6, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}}},
        {6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 5}, {4, 5}}},
        {6, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}}},
        {6, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}},
        {6, {{0, 1}, {0, 2}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}},
    }};
    return list;
}

bool has_beineke_subgraph(const graph& g) {
    for (const auto& [n, es] : beineke_graphs()) {
        graph b(n);
        for (auto [u, v] : es) b.add_edge(u, v);
        if (find_induced_embedding(b, g)) return true;
    }
    return false;
}

// Partition of the edges into cliques with every vertex in at most two of them.
class krausz_search {
public:
    explicit krausz_search(const graph& g) : g_(g), covered_(g.n() * g.n(), 0), count_(g.n(), 0) {}

    std::optional<std::vector<vertex_list>> run() {
        if (solve()) return cliques_;
        return std::nullopt;
    }

private:
    bool is_covered(vertex u, vertex v) const { return covered_[u * g_.n() + v] != 0; }
    void set_covered(vertex u, vertex v, char c) {
        covered_[u * g_.n() + v] = c;
        covered_[v * g_.n() + u] = c;
    }

    bool can_add(const vertex_list& c) const {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (count_[c[i]] >= 2) return false;
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!g_.adjacent(c[i], c[j]) || is_covered(c[i], c[j])) return false;
        }
        return true;
    }

    void apply(const vertex_list& c, bool add) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            count_[c[i]] += add ? 1 : -1;
            for (std::size_t j = i + 1; j < c.size(); ++j) set_covered(c[i], c[j], add ? 1 : 0);
        }
        if (add)
            cliques_.push_back(c);
        else
            cliques_.pop_back();
    }

    bool try_clique(const vertex_list& c) {
        if (!can_add(c)) return false;
        apply(c, true);
        if (solve()) return true;
        apply(c, false);
        return false;
    }

    bool solve() {
        vertex u = -1;
        vertex_list open;
        for (vertex v = 0; v < g_.n() && u < 0; ++v)
            for (vertex w : g_.neighbors(v))
                if (!is_covered(v, w)) {
                    u = v;
                    break;
                }
        if (u < 0) return true;
        for (vertex w : g_.neighbors(u))
            if (!is_covered(u, w)) open.push_back(w);
        if (count_[u] >= 2) return false;
        if (count_[u] == 1) {
            vertex_list c{u};
            c.insert(c.end(), open.begin(), open.end());
            return try_clique(c);
        }
        const std::size_t rest = open.size() - 1;
        if (rest >= 30) throw size_limit_error("line-graph recognition: degree too large");
        for (unsigned long mask = 0; mask < (1UL << rest); ++mask) {
            vertex_list c{u, open[0]};
            vertex_list other;
            for (std::size_t i = 0; i < rest; ++i) {
                if (mask & (1UL << i))
                    c.push_back(open[i + 1]);
                else
                    other.push_back(open[i + 1]);
            }
            if (!is_clique(g_, other)) continue;
            if (try_clique(c)) return true;
        }
        return false;
    }

    const graph& g_;
    std::vector<char> covered_;
    std::vector<int> count_;
    std::vector<vertex_list> cliques_;
};

bool realizes(const multigraph& m, const graph& g) {
    if (static_cast<int>(m.edges.size()) != g.n()) return false;
    return line_graph(m) == g;
}

}  // namespace

graph line_graph(const multigraph& m) {
    const int n = static_cast<int>(m.edges.size());
    std::vector<vertex_list> at(m.n);
    for (int i = 0; i < n; ++i) {
        auto [a, b] = m.edges[i];
        if (a == b) throw input_error("self-loop at multigraph vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= m.n || b >= m.n) throw input_error("multigraph edge endpoint out of range");
        at[a].push_back(i);
        at[b].push_back(i);
    }
    graph out(n);
    for (const auto& es : at)
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j) out.add_edge(es[i], es[j]);
    return out;
}

std::optional<multigraph> recognize_line_graph(const graph& g, triangle_preimage tri) {
    if (g.n() == 0 || !is_connected(g)) throw input_error("recognize_line_graph requires a connected graph");
    if (g.n() == 3 && g.edge_count() == 3) {
        multigraph m;
        if (tri == triangle_preimage::cycle) {
            m.n = 3;
            m.edges = {{0, 1}, {1, 2}, {0, 2}};
        } else {
            m.n = 4;
            m.edges = {{0, 1}, {0, 2}, {0, 3}};
        }
        return m;
    }

    const auto classes = twin_classes(g);
    std::vector<int> class_of(g.n());
    vertex_list reps;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        reps.push_back(classes[c].front());
        for (vertex v : classes[c]) class_of[v] = static_cast<int>(c);
    }
    const graph reduced = g.induced(reps);
    if (has_beineke_subgraph(reduced)) return std::nullopt;
    auto cliques = krausz_search(reduced).run();
    if (!cliques) return std::nullopt;

    // Pre-image of the reduced graph: one vertex per clique, plus private endpoints.
    multigraph m;
    m.n = static_cast<int>(cliques->size());
    std::vector<vertex_list> member_of(reduced.n());
    for (std::size_t c = 0; c < cliques->size(); ++c)
        for (vertex v : (*cliques)[c]) member_of[v].push_back(static_cast<vertex>(c));
    std::vector<std::pair<vertex, vertex>> class_edge(reduced.n());
    for (vertex v = 0; v < reduced.n(); ++v) {
        auto& mem = member_of[v];
        while (mem.size() < 2) mem.push_back(m.n++);
        class_edge[v] = {mem[0], mem[1]};
    }
    m.edges.reserve(g.n());
    for (vertex v = 0; v < g.n(); ++v) m.edges.push_back(class_edge[class_of[v]]);
    if (!realizes(m, g)) throw internal_error("line-graph pre-image does not realize the input");
    return m;
}

}  // namespace igm
