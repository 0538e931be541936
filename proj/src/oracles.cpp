#include "igm/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "igm/errors.hpp"

namespace igm {

namespace {

using bits = boost::dynamic_bitset<>;

// Clique-branching search for independent sets with cardinality and weight goals.
class is_search {
public:
    is_search(const graph& g, std::span<const std::int64_t> w) : g_(g), w_(w.begin(), w.end()) {
        const int n = g.n();
        if (w_.empty()) w_.assign(n, 0);
        nbr_.assign(n, bits(n));
        for (vertex v = 0; v < n; ++v)
            for (vertex u : g.neighbors(v)) nbr_[v].set(u);
    }

    // Largest set, or first set reaching `target` when target >= 0.
    vertex_list maximum(int target) {
        target_ = target;
        best_.clear();
        best_size_ = -1;
        done_ = false;
        bits all(g_.n());
        all.set();
        vertex_list cur;
        expand_max(all, cur);
        return best_;
    }

    std::optional<vertex_list> decide(int k_card, std::int64_t k_weight) {
        k_card_ = k_card;
        k_weight_ = k_weight;
        done_ = false;
        bits all(g_.n());
        all.set();
        vertex_list cur;
        expand_decide(all, cur, 0);
        if (!done_) return std::nullopt;
        return best_;
    }

private:
    std::vector<vertex_list> clique_cover(const bits& p) const {
        std::vector<vertex_list> cover;
        bits q = p;
        for (auto v = q.find_first(); v != bits::npos; v = q.find_first()) {
            vertex_list c{static_cast<vertex>(v)};
            bits cand = q & nbr_[v];
            for (auto u = cand.find_first(); u != bits::npos; u = cand.find_next(u)) {
                c.push_back(static_cast<vertex>(u));
                cand &= nbr_[u];
            }
            for (vertex x : c) q.reset(x);
            cover.push_back(std::move(c));
        }
        return cover;
    }

    static const vertex_list& smallest(const std::vector<vertex_list>& cover) {
        return *std::min_element(cover.begin(), cover.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
    }

    void record(const vertex_list& cur) {
        if (static_cast<int>(cur.size()) > best_size_) {
            best_size_ = static_cast<int>(cur.size());
            best_ = cur;
            std::sort(best_.begin(), best_.end());
            if (target_ >= 0 && best_size_ >= target_) done_ = true;
        }
    }

    void expand_max(const bits& p, vertex_list& cur) {
        if (done_) return;
        if (p.none()) {
            record(cur);
            return;
        }
        auto cover = clique_cover(p);
        if (static_cast<int>(cur.size() + cover.size()) <= best_size_) return;
        const vertex_list c = smallest(cover);
        for (vertex v : c) {
            bits next = p;
            next -= nbr_[v];
            next.reset(v);
            cur.push_back(v);
            expand_max(next, cur);
            cur.pop_back();
            if (done_) return;
        }
        bits rest = p;
        for (vertex v : c) rest.reset(v);
        expand_max(rest, cur);
    }

    void expand_decide(const bits& p, vertex_list& cur, std::int64_t weight) {
        if (done_) return;
        if (static_cast<int>(cur.size()) >= k_card_ && weight >= k_weight_) {
            done_ = true;
            best_ = cur;
            std::sort(best_.begin(), best_.end());
            return;
        }
        if (p.none()) return;
        auto cover = clique_cover(p);
        std::int64_t wbound = weight;
        for (const auto& c : cover) {
            std::int64_t m = 0;
            for (vertex v : c) m = std::max(m, w_[v]);
            wbound += m;
        }
        if (static_cast<int>(cur.size() + cover.size()) < k_card_ || wbound < k_weight_) return;
        vertex_list c = smallest(cover);
        std::stable_sort(c.begin(), c.end(), [&](vertex a, vertex b) { return w_[a] > w_[b]; });
        for (vertex v : c) {
            bits next = p;
            next -= nbr_[v];
            next.reset(v);
            cur.push_back(v);
            expand_decide(next, cur, weight + w_[v]);
            cur.pop_back();
            if (done_) return;
        }
        bits rest = p;
        for (vertex v : c) rest.reset(v);
        expand_decide(rest, cur, weight);
    }

    const graph& g_;
    std::vector<std::int64_t> w_;
    std::vector<bits> nbr_;
    int target_ = -1;
    int best_size_ = -1;
    vertex_list best_;
    bool done_ = false;
    int k_card_ = 0;
    std::int64_t k_weight_ = 0;
};

void check_cap(int n, int cap, const char* what) {
    if (n > cap)
        throw size_limit_error(std::string(what) + ": " + std::to_string(n) + " vertices exceeds cap " +
                               std::to_string(cap));
}

}  // namespace

const oracle_limits& default_limits() {
    static const oracle_limits lim;
    return lim;
}

bool star_free(const graph& g, int t) {
    if (t < 2) throw input_error("star size must be at least 2");
    for (vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) < t) continue;
        graph local = g.induced(g.neighbors(v));
        is_search s(local, {});
        if (static_cast<int>(s.maximum(t).size()) >= t) return false;
    }
    return true;
}

mis_result brute_force_mis_bounded(const graph& g, int target, const oracle_limits& lim) {
    check_cap(g.n(), lim.mis_vertices, "brute_force_mis");
    is_search s(g, {});
    mis_result r;
    r.witness = s.maximum(target);
    r.size = static_cast<int>(r.witness.size());
    return r;
}

mis_result brute_force_mis(const graph& g, const oracle_limits& lim) { return brute_force_mis_bounded(g, -1, lim); }

wis_result brute_force_wis(const graph& g, std::span<const std::int64_t> weights, int k_card, std::int64_t k_weight,
                           const oracle_limits& lim) {
    check_cap(g.n(), lim.wis_vertices, "brute_force_wis");
    if (static_cast<int>(weights.size()) != g.n()) throw input_error("weight vector size mismatch");
    for (auto w : weights)
        if (w < 0) throw input_error("negative vertex weight");
    is_search s(g, weights);
    wis_result r;
    if (auto w = s.decide(k_card, k_weight)) {
        r.feasible = true;
        r.witness = std::move(*w);
    }
    return r;
}

std::vector<occurrence> enumerate_occurrences(const graph& g, const pattern& h, const oracle_limits& lim) {
    const graph& hp = h.g();
    const int hn = hp.n();
    // Visit pattern vertices so that each one after a component root has an earlier neighbor.
    vertex_list order;
    std::vector<char> seen(hn, 0);
    for (vertex root = 0; root < hn; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::size_t head = order.size();
        order.push_back(root);
        while (head < order.size()) {
            vertex u = order[head++];
            for (vertex v : hp.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    order.push_back(v);
                }
        }
    }
    std::vector<vertex> anchor(hn, -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (hp.adjacent(order[i], order[j])) {
                anchor[order[i]] = order[j];
                break;
            }

    std::map<vertex_list, vertex_list> best;
    vertex_list phi(hn, -1);
    std::vector<char> used(g.n(), 0);
    auto place = [&](auto&& self, std::size_t depth) -> void {
        if (depth == order.size()) {
            vertex_list key = phi;
            std::sort(key.begin(), key.end());
            auto [it, inserted] = best.try_emplace(std::move(key), phi);
            if (!inserted && phi < it->second) it->second = phi;
            if (static_cast<int>(best.size()) > lim.occurrences)
                throw size_limit_error("occurrence enumeration exceeds cap " + std::to_string(lim.occurrences));
            return;
        }
        vertex u = order[depth];
        auto try_vertex = [&](vertex x) {
            if (used[x] || g.degree(x) < hp.degree(u)) return;
            for (std::size_t j = 0; j < depth; ++j) {
                vertex w = order[j];
                if (hp.adjacent(u, w) != g.adjacent(x, phi[w])) return;
            }
            used[x] = 1;
            phi[u] = x;
            self(self, depth + 1);
            phi[u] = -1;
            used[x] = 0;
        };
        if (anchor[u] >= 0) {
            for (vertex x : g.neighbors(phi[anchor[u]])) try_vertex(x);
        } else {
            for (vertex x = 0; x < g.n(); ++x) try_vertex(x);
        }
    };
    if (hn <= g.n()) place(place, 0);

    std::vector<occurrence> out;
    out.reserve(best.size());
    for (auto& [key, map] : best) out.push_back(occurrence{map});
    return out;
}

bool is_occurrence(const graph& g, const pattern& h, const occurrence& o) {
    const auto& vs = o.vertices;
    if (static_cast<int>(vs.size()) != h.h()) return false;
    for (vertex v : vs)
        if (v < 0 || v >= g.n()) return false;
    for (int i = 0; i < h.h(); ++i)
        for (int j = i + 1; j < h.h(); ++j) {
            if (vs[i] == vs[j]) return false;
            if (h.g().adjacent(i, j) != g.adjacent(vs[i], vs[j])) return false;
        }
    return true;
}

bool compatible(const occurrence& a, const occurrence& b, const graph& g) {
    for (vertex u : a.vertices)
        for (vertex v : b.vertices)
            if (u == v || g.adjacent(u, v)) return false;
    return true;
}

bool is_valid_matching(const graph& g, const pattern& h, const matching& m) {
    for (const auto& o : m.occurrences)
        if (!is_occurrence(g, h, o)) return false;
    for (std::size_t i = 0; i < m.occurrences.size(); ++i)
        for (std::size_t j = i + 1; j < m.occurrences.size(); ++j)
            if (!compatible(m.occurrences[i], m.occurrences[j], g)) return false;
    return true;
}

matching max_compatible_subset(const graph& g, std::span<const occurrence> occs, int target,
                               const oracle_limits& lim) {
    const int n = static_cast<int>(occs.size());
    check_cap(n, lim.occurrences, "occurrence conflict graph");
    graph conflict(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!compatible(occs[i], occs[j], g)) conflict.add_edge(i, j);
    is_search s(conflict, {});
    matching m;
    if (target == 0) return m;
    for (vertex i : s.maximum(target)) m.occurrences.push_back(occs[i]);
    return m;
}

matching brute_force_max_igm(const graph& g, const pattern& h, int target, const oracle_limits& lim) {
    auto occs = enumerate_occurrences(g, h, lim);
    return max_compatible_subset(g, occs, target, lim);
}

std::optional<matching> brute_force_igm(const graph& g, const pattern& h, int k, const oracle_limits& lim) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (k == 0) return matching{};
    matching m = brute_force_max_igm(g, h, k, lim);
    if (m.size() < k) return std::nullopt;
    m.occurrences.resize(k);
    return m;
}

std::vector<vertex_list> twin_classes(const graph& g) {
    std::map<vertex_list, vertex_list> by_closed;
    for (vertex v = 0; v < g.n(); ++v) {
        vertex_list key(g.neighbors(v).begin(), g.neighbors(v).end());
        key.insert(std::upper_bound(key.begin(), key.end(), v), v);
        by_closed[std::move(key)].push_back(v);
    }
    std::vector<vertex_list> out;
    for (auto& [key, members] : by_closed) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace igm
