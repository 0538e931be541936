#include "igm/embedding.hpp"

#include <algorithm>

#include "igm/oracles.hpp"

namespace igm {

namespace {

// For each vertex: the previous member of its twin class (restricted to the mask), or -1.
std::vector<vertex> twin_predecessor(const graph& g, const std::vector<char>& mask) {
    std::vector<vertex> pred(g.n(), -1);
    for (const auto& cls : twin_classes(g)) {
        vertex prev = -1;
        for (vertex v : cls) {
            if (!mask.empty() && !mask[v]) continue;
            pred[v] = prev;
            prev = v;
        }
    }
    return pred;
}

}  // namespace

bool for_each_induced_embedding(const graph& pat, const graph& host, const embedding_symmetry& sym,
                                const std::function<bool(const vertex_list&)>& visit) {
    const int pn = pat.n();
    if (pn > host.n()) return false;
    // Highest-degree vertex first, then repeatedly the vertex with most placed neighbors.
    vertex_list order;
    std::vector<char> placed(pn, 0);
    std::vector<int> placed_nbrs(pn, 0);
    for (int step = 0; step < pn; ++step) {
        vertex best = -1;
        for (vertex v = 0; v < pn; ++v) {
            if (placed[v]) continue;
            if (best < 0 || placed_nbrs[v] > placed_nbrs[best] ||
                (placed_nbrs[v] == placed_nbrs[best] && pat.degree(v) > pat.degree(best)))
                best = v;
        }
        placed[best] = 1;
        order.push_back(best);
        for (vertex u : pat.neighbors(best)) ++placed_nbrs[u];
    }
    std::vector<int> pos(pn);
    for (int i = 0; i < pn; ++i) pos[order[i]] = i;
    std::vector<vertex> anchor(pn, -1);
    for (int i = 0; i < pn; ++i)
        for (vertex u : pat.neighbors(order[i]))
            if (pos[u] < i && (anchor[order[i]] < 0 || pos[u] < pos[anchor[order[i]]])) anchor[order[i]] = u;

    const auto host_pred = twin_predecessor(host, sym.host_mask);
    // Pattern twins are interchangeable: along search order their images must have
    // non-decreasing host twin-class ids. This commutes with the host prefix rule.
    std::vector<int> host_class(host.n());
    {
        int id = 0;
        for (const auto& cls : twin_classes(host)) {
            for (vertex v : cls) host_class[v] = id;
            ++id;
        }
    }
    std::vector<vertex> pat_prev(pn, -1);
    for (const auto& cls : twin_classes(pat)) {
        vertex_list by_pos(cls.begin(), cls.end());
        std::sort(by_pos.begin(), by_pos.end(), [&](vertex a, vertex b) { return pos[a] < pos[b]; });
        for (std::size_t i = 1; i < by_pos.size(); ++i) pat_prev[by_pos[i]] = by_pos[i - 1];
    }

    const bool pinning = !sym.pattern_pinned.empty() && !sym.host_pinned.empty();
    vertex_list phi(pn, -1);
    std::vector<char> used(host.n(), 0);
    bool stop = false;
    auto place = [&](auto&& self, int depth) -> void {
        if (depth == pn) {
            stop = visit(phi);
            return;
        }
        vertex u = order[depth];
        auto try_vertex = [&](vertex x) {
            if (stop || used[x] || host.degree(x) < pat.degree(u)) return;
            if (host_pred[x] >= 0 && !used[host_pred[x]]) return;
            if (pinning && sym.pattern_pinned[u] != sym.host_pinned[x]) return;
            if (pat_prev[u] >= 0 && host_class[phi[pat_prev[u]]] > host_class[x]) return;
            for (int j = 0; j < depth; ++j) {
                vertex w = order[j];
                if (pat.adjacent(u, w) != host.adjacent(x, phi[w])) return;
            }
            used[x] = 1;
            phi[u] = x;
            self(self, depth + 1);
            phi[u] = -1;
            used[x] = 0;
        };
        if (anchor[u] >= 0) {
            const auto nb = host.neighbors(phi[anchor[u]]);
            const vertex_list copy(nb.begin(), nb.end());
            for (vertex x : copy) try_vertex(x);
        } else {
            for (vertex x = 0; x < host.n(); ++x) try_vertex(x);
        }
    };
    place(place, 0);
    return stop;
}

std::optional<vertex_list> find_induced_embedding(const graph& pat, const graph& host) {
    std::optional<vertex_list> out;
    for_each_induced_embedding(pat, host, {}, [&](const vertex_list& m) {
        out = m;
        return true;
    });
    return out;
}

bool isomorphic(const graph& a, const graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    return find_induced_embedding(a, b).has_value();
}

}  // namespace igm
