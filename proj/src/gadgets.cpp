#include "igm/gadgets.hpp"

#include <functional>
#include <map>

#include "igm/errors.hpp"
#include "igm/line_graph.hpp"

namespace igm {

namespace {

std::vector<vertex_list> color_classes(const graph& g, std::span<const int> colors, int k) {
    if (k < 2) throw input_error("multicolored clique needs k >= 2");
    if (static_cast<int>(colors.size()) != g.n()) throw input_error("every vertex needs a color");
    std::vector<vertex_list> classes(k + 1);
    for (vertex v = 0; v < g.n(); ++v) {
        if (colors[v] < 1 || colors[v] > k)
            throw input_error("color of vertex " + std::to_string(v) + " is outside 1.." + std::to_string(k));
        classes[colors[v]].push_back(v);
    }
    for (int i = 1; i <= k; ++i)
        if (classes[i].empty()) throw input_error("color " + std::to_string(i) + " has no vertex");
    return classes;
}

// Edges of g between color i and color j (i < j), oriented (color i end, color j end).
std::vector<std::pair<vertex, vertex>> colored_edges(const graph& g, std::span<const int> colors, int i, int j) {
    std::vector<std::pair<vertex, vertex>> out;
    for (auto [u, v] : g.edges()) {
        if (colors[u] == i && colors[v] == j) out.emplace_back(u, v);
        else if (colors[u] == j && colors[v] == i) out.emplace_back(v, u);
    }
    return out;
}

// Columns of the vertex gadget for color i: {1..k} without i, in order.
std::vector<int> columns_for(int i, int k) {
    std::vector<int> cols;
    for (int j = 1; j <= k; ++j)
        if (j != i) cols.push_back(j);
    return cols;
}

}  // namespace

int mcc_gadget_size(const graph& g, std::span<const int> colors, int k) {
    const auto classes = color_classes(g, colors, k);
    int total = 0;
    for (int i = 1; i <= k; ++i) total += static_cast<int>(classes[i].size()) * (k - 1);
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) total += 2 * static_cast<int>(colored_edges(g, colors, i, j).size());
    return total;
}

gadget_instance mcc_to_is_k14(const graph& g, std::span<const int> colors, int k) {
    const auto classes = color_classes(g, colors, k);
    gadget_instance out;
    out.k = 2 * k * (k - 1);
    // vertex_slot[i][p][j] is the gadget vertex (v_i^p, j).
    std::vector<std::vector<std::map<int, vertex>>> vertex_slot(k + 1);
    std::vector<std::pair<vertex, vertex>> edges;
    int next = 0;
    for (int i = 1; i <= k; ++i) {
        const auto cols = columns_for(i, k);
        for (vertex v : classes[i]) {
            std::map<int, vertex> row;
            for (int j : cols) {
                row[j] = next++;
                out.labels.push_back("V" + std::to_string(i) + ":v" + std::to_string(v) + ":c" + std::to_string(j));
            }
            vertex_slot[i].push_back(std::move(row));
        }
        const int rows = static_cast<int>(classes[i].size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const int j = cols[c];
            const int succ = cols[(c + 1) % cols.size()];
            for (int p = 0; p < rows; ++p)
                for (int q = 0; q < rows; ++q) {
                    if (p < q) edges.emplace_back(vertex_slot[i][p][j], vertex_slot[i][q][j]);  // column clique
                    if (q < p && succ != j) edges.emplace_back(vertex_slot[i][p][j], vertex_slot[i][q][succ]);  // diagonal
                }
        }
    }
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            const auto eij = colored_edges(g, colors, i, j);
            std::vector<std::pair<vertex, vertex>> slots;  // (e, i), (e, j)
            for (auto [a, b] : eij) {
                const std::string tag = "E" + std::to_string(i) + "-" + std::to_string(j) + ":e" + std::to_string(a) +
                                        "-" + std::to_string(b);
                slots.emplace_back(next, next + 1);
                out.labels.push_back(tag + ":c" + std::to_string(i));
                out.labels.push_back(tag + ":c" + std::to_string(j));
                next += 2;
            }
            for (std::size_t r = 0; r < slots.size(); ++r)
                for (std::size_t s = r + 1; s < slots.size(); ++s) {
                    edges.emplace_back(slots[r].first, slots[s].first);
                    edges.emplace_back(slots[r].second, slots[s].second);
                    edges.emplace_back(slots[r].first, slots[s].second);
                    edges.emplace_back(slots[r].second, slots[s].first);
                }
            // Cross connections: (v_i^p, j) to (e, i) when v_i^p is not an end of e, and symmetrically.
            for (std::size_t r = 0; r < eij.size(); ++r) {
                const auto [a, b] = eij[r];
                for (std::size_t p = 0; p < classes[i].size(); ++p)
                    if (classes[i][p] != a) edges.emplace_back(vertex_slot[i][p][j], slots[r].first);
                for (std::size_t q = 0; q < classes[j].size(); ++q)
                    if (classes[j][q] != b) edges.emplace_back(vertex_slot[j][q][i], slots[r].second);
            }
        }
    out.g = graph(next);
    for (auto [u, v] : edges) out.g.add_edge(u, v);
    return out;
}

gadget_instance is_to_igm_blowup(const graph& g, int k, const pattern& h) {
    if (!h.is_complete()) throw input_error("blow-up needs a complete pattern");
    const int size = h.h();
    gadget_instance out;
    out.k = k;
    out.g = graph(g.n() * size);
    for (vertex v = 0; v < g.n(); ++v)
        for (int c = 0; c < size; ++c) {
            out.labels.push_back("v" + std::to_string(v) + ":" + std::to_string(c));
            for (int d = c + 1; d < size; ++d) out.g.add_edge(v * size + c, v * size + d);
        }
    for (auto [u, v] : g.edges())
        for (int c = 0; c < size; ++c)
            for (int d = 0; d < size; ++d) out.g.add_edge(u * size + c, v * size + d);
    return out;
}

gadget_instance cubic_is_to_triangle_matching(const graph& g, int k) {
    for (vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) != 3) throw input_error("vertex " + std::to_string(v) + " does not have degree 3");
    const auto es = g.edges();
    multigraph sub{g.n() + static_cast<int>(es.size()), {}};
    gadget_instance out;
    out.k = k;
    for (std::size_t t = 0; t < es.size(); ++t) {
        const auto [u, v] = es[t];
        const vertex x = g.n() + static_cast<int>(t);
        const std::string mid = "s" + std::to_string(u) + "-" + std::to_string(v);
        sub.edges.emplace_back(u, x);
        out.labels.push_back(std::to_string(u) + "-" + mid);
        sub.edges.emplace_back(x, v);
        out.labels.push_back(mid + "-" + std::to_string(v));
    }
    out.g = line_graph(sub);
    return out;
}

bool has_multicolored_clique(const graph& g, std::span<const int> colors, int k) {
    const auto classes = color_classes(g, colors, k);
    vertex_list picked;
    std::function<bool(int)> rec = [&](int color) {
        if (color > k) return true;
        for (vertex v : classes[color]) {
            bool ok = true;
            for (vertex u : picked) ok = ok && g.adjacent(u, v);
            if (!ok) continue;
            picked.push_back(v);
            if (rec(color + 1)) return true;
            picked.pop_back();
        }
        return false;
    };
    return rec(1);
}

}  // namespace igm
