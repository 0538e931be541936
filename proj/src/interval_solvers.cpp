#include "igm/interval_solvers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "igm/embedding.hpp"
#include "igm/errors.hpp"
#include "igm/oracles.hpp"

namespace igm {

namespace {

struct score {
    std::int64_t weight = 0;
    int card = 0;
    friend auto operator<=>(const score&, const score&) = default;
    score operator+(const score& o) const { return {weight + o.weight, card + o.card}; }
};

bool overlaps(const weighted_interval& a, const weighted_interval& b) {
    return std::max(a.l, b.l) <= std::min(a.r, b.r);
}

// Best score over the allowed intervals, by right-endpoint dynamic programming.
score best_score(std::span<const weighted_interval> items, const std::vector<char>& allowed) {
    vertex_list ids;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (allowed[i]) ids.push_back(static_cast<vertex>(i));
    std::sort(ids.begin(), ids.end(), [&](vertex a, vertex b) { return items[a].r < items[b].r; });
    std::vector<score> best(ids.size() + 1);
    for (std::size_t j = 0; j < ids.size(); ++j) {
        const auto& cur = items[ids[j]];
        // Last position whose interval ends strictly before cur starts.
        auto it = std::lower_bound(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(j), cur.l,
                                   [&](vertex v, coord l) { return items[v].r < l; });
        const std::size_t p = static_cast<std::size_t>(it - ids.begin());
        best[j + 1] = std::max(best[j], best[p] + score{cur.weight, 1});
    }
    return best.back();
}

void require_connected(const pattern& h, const char* who) {
    if (!h.is_connected()) throw input_error(std::string(who) + " requires a connected pattern");
}

// Interval graph around a cut at p: arcs through p split into the part after p and the
// part before p, with an anchor clique glued to each side.
struct augmented {
    graph g;
    vertex_list arc_of;  // -1 for anchor vertices
    std::vector<char> anchor;
};

augmented build_augmented(const arc_model& m, circle_point p, int anchor_size) {
    const coord len = 2 * m.circumference;
    auto rel = [&](coord halves) { return ((halves - p.halves) % len + len) % len; };
    interval_model im;
    augmented out;
    for (int i = 0; i < static_cast<int>(m.items.size()); ++i) {
        const coord s = rel(2 * m.items[i].s), t = rel(2 * m.items[i].t);
        if (!arc_contains(m, i, p)) {
            im.items.push_back({2 * s, 2 * t});
            out.arc_of.push_back(i);
            continue;
        }
        if (t != 0) {
            im.items.push_back({1, 2 * t});
            out.arc_of.push_back(i);
        }
        if (s != 0) {
            im.items.push_back({2 * s, 2 * len - 1});
            out.arc_of.push_back(i);
        }
    }
    out.anchor.assign(out.arc_of.size(), 0);
    for (int side = 0; side < 2; ++side)
        for (int a = 0; a < anchor_size; ++a) {
            im.items.push_back(side == 0 ? interval{-1, 1} : interval{2 * len - 1, 2 * len + 1});
            out.arc_of.push_back(-1);
            out.anchor.push_back(1);
        }
    out.g = realize(im);
    return out;
}

}  // namespace

interval_wis_result interval_wis(std::span<const weighted_interval> items) {
    const std::size_t n = items.size();
    for (const auto& it : items)
        if (it.weight < 0) throw input_error("interval weights must be nonnegative");
    std::vector<char> allowed(n, 1);
    const score opt = best_score(items, allowed);
    interval_wis_result out;
    score taken;
    for (std::size_t i = 0; i < n; ++i) {
        if (!allowed[i]) continue;
        std::vector<char> rest = allowed;
        for (std::size_t j = 0; j < n; ++j)
            if (rest[j] && overlaps(items[i], items[j])) rest[j] = 0;
        const score with = taken + score{items[i].weight, 1};
        if (with + best_score(items, rest) == opt) {
            taken = with;
            allowed = std::move(rest);
            out.witness.push_back(static_cast<vertex>(i));
        } else {
            allowed[i] = 0;
        }
    }
    out.weight = opt.weight;
    out.cardinality = opt.card;
    return out;
}

matching max_igm_interval(const interval_model& model, const pattern& h) {
    require_connected(h, "interval solver");
    const graph g = realize(model);
    const auto occs = enumerate_occurrences(g, h);
    // One auxiliary interval per (leftmost, rightmost) class.
    std::map<std::pair<vertex, vertex>, std::size_t> seen;
    std::vector<weighted_interval> aux;
    std::vector<std::size_t> source;
    for (std::size_t i = 0; i < occs.size(); ++i) {
        vertex left = -1, right = -1;
        for (vertex v : occs[i].vertices) {
            const interval& it = model.items[v];
            if (left < 0 || it.l < model.items[left].l || (it.l == model.items[left].l && v < left)) left = v;
            if (right < 0 || it.r > model.items[right].r || (it.r == model.items[right].r && v < right)) right = v;
        }
        if (seen.try_emplace({left, right}, i).second) {
            aux.push_back({model.items[left].l, model.items[right].r, 1});
            source.push_back(i);
        }
    }
    matching m;
    for (vertex a : interval_wis(aux).witness) m.occurrences.push_back(occs[source[a]]);
    return m;
}

std::optional<matching> solve_igm_proper_interval(const interval_model& model, const pattern& h, int k) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (!validate(model).proper) throw input_error("interval model is not proper");
    matching m = max_igm_interval(model, h);
    if (m.size() < k) return std::nullopt;
    m.occurrences.resize(k);
    return m;
}

std::optional<occurrence> solve_isi_long_proper_ca(const arc_model& model_g, const arc_model& model_h) {
    const model_report rg = validate(model_g);
    if (!rg.long_arcs || !rg.proper) throw input_error("host arc model must be long and proper");
    if (!validate(model_h).proper) throw input_error("pattern arc model must be proper");
    const graph g = realize(model_g);
    const pattern h(realize(model_h));
    if (h.h() > g.n()) return std::nullopt;
    const int anchor_size = 1 + std::max(g.n(), h.h());
    const auto reps_g = equivalence_points(model_g);
    const auto reps_h = equivalence_points(model_h);
    std::vector<augmented> hs;
    for (auto ph : reps_h) hs.push_back(build_augmented(model_h, ph, anchor_size));
    for (auto pg : reps_g) {
        const augmented ga = build_augmented(model_g, pg, anchor_size);
        for (const augmented& ha : hs) {
            const embedding_symmetry sym{ga.anchor, ha.anchor, ga.anchor};
            std::optional<occurrence> hit;
            for_each_induced_embedding(ha.g, ga.g, sym, [&](const vertex_list& phi) {
                occurrence o;
                o.vertices.assign(h.h(), -1);
                for (vertex x = 0; x < ha.g.n(); ++x) {
                    const vertex hv = ha.arc_of[x];
                    if (hv < 0 || o.vertices[hv] >= 0) continue;
                    o.vertices[hv] = ga.arc_of[phi[x]];
                }
                if (std::find(o.vertices.begin(), o.vertices.end(), -1) != o.vertices.end()) return false;
                if (!is_occurrence(g, h, o)) return false;
                hit = std::move(o);
                return true;
            });
            if (hit) return hit;
        }
    }
    return std::nullopt;
}

std::optional<matching> solve_igm_long_proper_ca(const arc_model& model, const pattern& h, const arc_model* h_model,
                                                 int k, run_notes* notes) {
    if (k < 0) throw input_error("k must be nonnegative");
    require_connected(h, "long proper circular-arc solver");
    const model_report r = validate(model);
    if (!r.long_arcs || !r.proper) throw input_error("arc model must be long and proper");
    if (k == 0) return matching{};
    matching best;
    for (circle_point p : equivalence_points(model)) {
        const cut_result cut = cut_at_point(model, p);
        matching local = max_igm_interval(cut.intervals, h);
        note_count(notes, "cut_points");
        if (local.size() <= best.size()) continue;
        for (auto& o : local.occurrences)
            for (vertex& v : o.vertices) v = cut.kept[v];
        best = std::move(local);
        if (best.size() >= k) break;
    }
    if (best.size() >= k) {
        best.occurrences.resize(k);
        return best;
    }
    if (k != 1) return std::nullopt;
    const graph g = realize(model);
    if (h_model) {
        if (!(realize(*h_model) == h.g())) throw input_error("pattern arc model does not realize the pattern graph");
        auto o = solve_isi_long_proper_ca(model, *h_model);
        if (!o) return std::nullopt;
        // Re-express the hit in the caller's pattern labelling (identical by the check above).
        return matching{{*o}};
    }
    note_deviation(notes, "isi-fallback-bruteforce");
    auto occs = enumerate_occurrences(g, h);
    if (occs.empty()) return std::nullopt;
    return matching{{occs.front()}};
}

std::optional<matching> solve_igm_proper_ca_disconnected(const arc_model& model, const pattern& h, int k) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (h.is_connected()) throw input_error("cut-point routine is for disconnected patterns");
    if (!validate(model).proper) throw input_error("arc model is not proper");
    if (k * h.h() > disconnected_pattern_cap)
        throw size_limit_error("k * |V(H)| = " + std::to_string(k * h.h()) + " exceeds cap " +
                               std::to_string(disconnected_pattern_cap));
    if (k == 0) return matching{};
    graph copies(0);
    for (int i = 0; i < k; ++i) copies = shapes::disjoint_union(copies, h.g());
    const graph g = realize(model);
    for (circle_point p : equivalence_points(model)) {
        const cut_result cut = cut_at_point(model, p);
        const graph gc = realize(cut.intervals);
        auto phi = find_induced_embedding(copies, gc);
        if (!phi) continue;
        matching m;
        for (int i = 0; i < k; ++i) {
            occurrence o;
            for (int v = 0; v < h.h(); ++v) o.vertices.push_back(cut.kept[(*phi)[i * h.h() + v]]);
            m.occurrences.push_back(std::move(o));
        }
        if (!is_valid_matching(g, h, m)) throw internal_error("cut-point embedding is not a valid matching");
        return m;
    }
    return std::nullopt;
}

}  // namespace igm
