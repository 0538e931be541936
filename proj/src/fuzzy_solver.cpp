#include "igm/fuzzy_solver.hpp"

#include <algorithm>
#include <numeric>

#include "igm/errors.hpp"

namespace igm {

namespace {

struct dp_context {
    graph g;
    std::vector<occurrence> occs;
    std::vector<std::vector<char>> compat;
};

dp_context prepare(const fuzzy_arc_model& model, const pattern& h) {
    if (!h.is_connected()) throw input_error("fuzzy solver requires a connected pattern");
    dp_context c;
    c.g = realize(model);
    c.occs = enumerate_occurrences(c.g, h);
    const std::size_t n = c.occs.size();
    c.compat.assign(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            c.compat[i][j] = c.compat[j][i] = compatible(c.occs[i], c.occs[j], c.g) ? 1 : 0;
    return c;
}

// Largest chain starting with occurrence `start`; returns occurrence indices.
std::vector<std::size_t> chain_from(const fuzzy_arc_model& model, const dp_context& c, std::size_t start) {
    const arc_model& am = model.arcs;
    const coord len = 2 * am.circumference;
    const arc& cut_arc = am.items[c.occs[start].vertices.front()];
    const coord arc_len = ((2 * cut_arc.t - 2 * cut_arc.s) % len + len) % len;
    const circle_point cut{(2 * cut_arc.s + arc_len / 2) % len};
    auto rel = [&](coord halves) { return ((halves - cut.halves) % len + len) % len; };

    std::vector<std::size_t> residual;
    for (std::size_t i = 0; i < c.occs.size(); ++i)
        if (c.compat[start][i]) residual.push_back(i);
    std::vector<coord> right(c.occs.size(), 0);
    for (std::size_t i : residual)
        for (vertex v : c.occs[i].vertices) {
            if (arc_contains(am, v, cut)) throw internal_error("residual arc wraps across the cut point");
            right[i] = std::max(right[i], rel(2 * am.items[v].t));
        }
    std::stable_sort(residual.begin(), residual.end(), [&](std::size_t a, std::size_t b) { return right[a] < right[b]; });

    std::vector<int> best(residual.size(), 1);
    std::vector<int> parent(residual.size(), -1);
    for (std::size_t a = 0; a < residual.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            if (right[residual[b]] >= right[residual[a]]) break;
            if (c.compat[residual[a]][residual[b]] && best[b] + 1 > best[a]) {
                best[a] = best[b] + 1;
                parent[a] = static_cast<int>(b);
            }
        }
    std::vector<std::size_t> chain{start};
    if (residual.empty()) return chain;
    int at = static_cast<int>(std::max_element(best.begin(), best.end()) - best.begin());
    for (; at >= 0; at = parent[at]) chain.push_back(residual[at]);
    return chain;
}

}  // namespace

int fuzzy_dp_value_from(const fuzzy_arc_model& model, const pattern& h, std::size_t start) {
    const dp_context c = prepare(model, h);
    if (start >= c.occs.size()) throw input_error("start occurrence out of range");
    return static_cast<int>(chain_from(model, c, start).size());
}

matching max_igm_fuzzy_ca(const fuzzy_arc_model& model, const pattern& h, int target) {
    const dp_context c = prepare(model, h);
    std::vector<std::size_t> best;
    for (std::size_t s = 0; s < c.occs.size(); ++s) {
        auto chain = chain_from(model, c, s);
        if (chain.size() > best.size()) best = std::move(chain);
        if (target >= 0 && static_cast<int>(best.size()) >= target) break;
    }
    matching m;
    for (std::size_t i : best) m.occurrences.push_back(c.occs[i]);
    if (!is_valid_matching(c.g, h, m)) throw internal_error("fuzzy dynamic program produced an invalid matching");
    return m;
}

std::optional<matching> solve_igm_fuzzy_ca(const fuzzy_arc_model& model, const pattern& h, int k) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (k == 0) return matching{};
    matching m = max_igm_fuzzy_ca(model, h, k);
    if (m.size() < k) return std::nullopt;
    m.occurrences.resize(k);
    return m;
}

matching max_igm_small_alpha(const graph& g, const pattern& h, int alpha_bound, bool alpha_trusted) {
    if (!alpha_trusted && brute_force_mis_bounded(g, alpha_bound + 1).size > alpha_bound)
        throw input_error("independence number exceeds the small-alpha bound");
    return brute_force_max_igm(g, h);
}

std::optional<matching> solve_igm_small_alpha(const graph& g, const pattern& h, int k, int alpha_bound,
                                              bool alpha_trusted) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (!alpha_trusted && brute_force_mis_bounded(g, alpha_bound + 1).size > alpha_bound)
        throw input_error("independence number exceeds the small-alpha bound");
    if (k == 0) return matching{};
    if (k > alpha_bound) return std::nullopt;
    matching m = brute_force_max_igm(g, h, k);
    if (m.size() < k) return std::nullopt;
    m.occurrences.resize(k);
    return m;
}

}  // namespace igm
