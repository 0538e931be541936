#include "igm/color_coding.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "igm/errors.hpp"
#include "igm/fuzzy_solver.hpp"
#include "igm/oracles.hpp"

namespace igm {

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

namespace {

std::vector<int> encode(const base& b) {
    std::vector<int> out{b.vertex_count, static_cast<int>(b.edges.size())};
    for (const auto& e : b.edges) {
        out.push_back(e.spot ? 1 : 0);
        out.push_back(static_cast<int>(e.members.size()));
        out.insert(out.end(), e.members.begin(), e.members.end());
    }
    for (std::size_t t = 0; t < b.token_edge.size(); ++t) {
        out.push_back(b.token_edge[t]);
        out.push_back(static_cast<int>(b.token_place[t].kind));
        out.push_back(b.token_place[t].member);
    }
    return out;
}

// Renumbers vertices by first appearance, scanning edges and members in order.
void renumber(base& b) {
    std::vector<int> relabel(b.vertex_count, -1);
    int next = 0;
    for (auto& e : b.edges)
        for (int& m : e.members) {
            if (relabel[m] < 0) relabel[m] = next++;
            m = relabel[m];
        }
}

// Base vertices whose boundary holds the token (both ends for a spot).
std::vector<int> boundary_vertices(const base& b, int t) {
    const base_edge& e = b.edges[b.token_edge[t]];
    switch (b.token_place[t].kind) {
        case slot_kind::spot: return e.members;
        case slot_kind::boundary: return {e.members[b.token_place[t].member]};
        case slot_kind::interior: break;
    }
    return {};
}

bool share_any(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    return false;
}

struct base_generator {
    int total = 0;
    const std::function<bool(const base&)>& visit;
    base b;
    bool stop = false;

    void place(int t, int edge, token_slot slot) {
        b.token_edge.push_back(edge);
        b.token_place.push_back(slot);
        run(t + 1);
        b.token_edge.pop_back();
        b.token_place.pop_back();
    }

    void open_edge(int t, base_edge e, int new_vertices) {
        const int edge = static_cast<int>(b.edges.size());
        b.vertex_count += new_vertices;
        const bool spot = e.spot;
        const int arity = static_cast<int>(e.members.size());
        b.edges.push_back(std::move(e));
        if (spot) {
            place(t, edge, {slot_kind::spot, 0});
        } else {
            place(t, edge, {slot_kind::interior, 0});
            for (int m = 0; m < arity && !stop; ++m) place(t, edge, {slot_kind::boundary, m});
        }
        b.edges.pop_back();
        b.vertex_count -= new_vertices;
    }

    void run(int t) {
        if (stop) return;
        if (t == total) {
            if (encode(b) == canonical_form(b)) stop = visit(b);
            return;
        }
        // Into an existing stripe.
        for (int f = 0; f < static_cast<int>(b.edges.size()) && !stop; ++f) {
            if (b.edges[f].spot) continue;
            place(t, f, {slot_kind::interior, 0});
            for (int m = 0; m < static_cast<int>(b.edges[f].members.size()) && !stop; ++m)
                place(t, f, {slot_kind::boundary, m});
        }
        // Into a new edge; a new vertex always takes the next id.
        const int v = b.vertex_count;
        for (int x = 0; x <= v && !stop; ++x) open_edge(t, {false, {x}}, x == v ? 1 : 0);
        for (int x = 0; x <= v && !stop; ++x) {
            const int after_x = x == v ? v + 1 : v;
            for (int y = 0; y <= after_x && !stop; ++y) {
                if (y == x) continue;
                const int fresh = (x == v ? 1 : 0) + (y == after_x ? 1 : 0);
                open_edge(t, {false, {x, y}}, fresh);
                if (!stop) open_edge(t, {true, {x, y}}, fresh);
            }
        }
    }
};

}  // namespace

bool is_well_formed(const base& b) {
    const int total = b.tokens.size();
    if (static_cast<int>(b.token_edge.size()) != total || static_cast<int>(b.token_place.size()) != total)
        return false;
    std::vector<int> per_edge(b.edges.size(), 0);
    for (const auto& e : b.edges) {
        if (e.members.empty() || e.members.size() > 2) return false;
        if (e.spot && e.members.size() != 2) return false;
        if (e.members.size() == 2 && e.members[0] == e.members[1]) return false;
        for (int m : e.members)
            if (m < 0 || m >= b.vertex_count) return false;
    }
    for (int t = 0; t < total; ++t) {
        const int f = b.token_edge[t];
        if (f < 0 || f >= static_cast<int>(b.edges.size())) return false;
        const auto& e = b.edges[f];
        const token_slot s = b.token_place[t];
        if (e.spot != (s.kind == slot_kind::spot)) return false;
        if (s.kind == slot_kind::boundary && (s.member < 0 || s.member >= static_cast<int>(e.members.size())))
            return false;
        ++per_edge[f];
    }
    for (std::size_t f = 0; f < b.edges.size(); ++f) {
        if (per_edge[f] == 0) return false;
        if (b.edges[f].spot && per_edge[f] != 1) return false;
    }
    return true;
}

std::vector<int> canonical_form(const base& b) {
    // Edges are identified by their tokens; order them by smallest token.
    base ordered = b;
    std::vector<int> first_token(b.edges.size(), b.tokens.size());
    for (int t = static_cast<int>(b.token_edge.size()) - 1; t >= 0; --t) first_token[b.token_edge[t]] = t;
    std::vector<int> order(b.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return first_token[x] < first_token[y]; });
    std::vector<int> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = static_cast<int>(i);
        ordered.edges[i] = b.edges[order[i]];
    }
    for (auto& f : ordered.token_edge) f = pos[f];

    std::vector<int> pairs;
    for (std::size_t i = 0; i < ordered.edges.size(); ++i)
        if (ordered.edges[i].members.size() == 2) pairs.push_back(static_cast<int>(i));
    std::vector<int> best;
    for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
        base c = ordered;
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (!(mask >> j & 1U)) continue;
            auto& e = c.edges[pairs[j]];
            std::swap(e.members[0], e.members[1]);
            for (std::size_t t = 0; t < c.token_edge.size(); ++t)
                if (c.token_edge[t] == pairs[j] && c.token_place[t].kind == slot_kind::boundary)
                    c.token_place[t].member = 1 - c.token_place[t].member;
        }
        renumber(c);
        auto code = encode(c);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

void enumerate_bases(int h, int k, const std::function<bool(const base&)>& visit) {
    if (h < 1 || k < 1) throw input_error("bases need h >= 1 and k >= 1");
    base_generator gen{h * k, visit, {}};
    gen.b.tokens = {h, k};
    gen.run(0);
}

std::int64_t count_bases(int h, int k) {
    std::int64_t n = 0;
    enumerate_bases(h, k, [&](const base&) {
        ++n;
        return false;
    });
    return n;
}

bool check_condition1(const base& b, const pattern& h) {
    for (int g = 0; g < b.tokens.k; ++g)
        for (const auto& [u, v] : h.g().edges()) {
            const int a = g * b.tokens.h + u, c = g * b.tokens.h + v;
            if (b.token_edge[a] == b.token_edge[c]) continue;
            if (!share_any(boundary_vertices(b, a), boundary_vertices(b, c))) return false;
        }
    return true;
}

bool check_condition2(const base& b, const pattern& h) {
    std::vector<std::vector<int>> at(b.vertex_count);
    for (int t = 0; t < b.tokens.size(); ++t)
        for (int p : boundary_vertices(b, t)) at[p].push_back(t);
    for (const auto& ts : at)
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                if (b.tokens.group(ts[i]) != b.tokens.group(ts[j])) return false;
                if (!h.g().adjacent(b.tokens.pattern_vertex(ts[i]), b.tokens.pattern_vertex(ts[j]))) return false;
            }
    return true;
}

// ---------------------------------------------------------------------------
// Palette, elements, blanking
// ---------------------------------------------------------------------------

palette::palette(const base& b) {
    for (int v = 0; v < b.vertex_count; ++v) vertex_color.push_back(size++);
    for (const auto& e : b.edges) {
        if (e.spot) {
            spot_color.push_back(size++);
            interior_color.push_back(-1);
            boundary_color.emplace_back();
        } else {
            spot_color.push_back(-1);
            interior_color.push_back(size++);
            std::vector<int> bc;
            for (std::size_t m = 0; m < e.members.size(); ++m) bc.push_back(size++);
            boundary_color.push_back(std::move(bc));
        }
    }
}

std::vector<int> palette::sequence(const base& b, std::size_t edge) const {
    const auto& e = b.edges[edge];
    const int p = vertex_color[e.members[0]];
    if (e.members.size() == 1) return {p, boundary_color[edge][0], interior_color[edge]};
    const int q = vertex_color[e.members[1]];
    if (e.spot) return {p, spot_color[edge], q};
    return {p, boundary_color[edge][0], interior_color[edge], boundary_color[edge][1], q};
}

std::vector<element> elements_of(const strip_structure& ss) {
    std::vector<element> out;
    std::vector<int> labels = ss.vertices;
    std::sort(labels.begin(), labels.end());
    for (int r : labels) out.push_back({element_kind::vertex, r, 0, 0});
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        const auto& e = ss.edges[i];
        if (e.members.empty()) continue;
        if (classify_strip(e.s) == strip_kind::spot) {
            out.push_back({element_kind::spot, 0, i, 0});
            continue;
        }
        out.push_back({element_kind::interior, 0, i, 0});
        for (std::size_t m = 0; m < e.members.size(); ++m)
            out.push_back({element_kind::boundary, 0, i, static_cast<int>(m)});
    }
    return out;
}

namespace {

struct element_index {
    std::map<int, std::size_t> vertex;                 // label -> element
    std::map<std::size_t, std::vector<std::size_t>> edge;  // strip-edge -> its elements
    std::map<std::size_t, std::size_t> spot, interior;
    std::map<std::pair<std::size_t, int>, std::size_t> boundary;

    explicit element_index(const std::vector<element>& els) {
        for (std::size_t i = 0; i < els.size(); ++i) {
            const element& x = els[i];
            switch (x.kind) {
                case element_kind::vertex: vertex[x.label] = i; break;
                case element_kind::spot: spot[x.edge] = i; break;
                case element_kind::interior: interior[x.edge] = i; break;
                case element_kind::boundary: boundary[{x.edge, x.member}] = i; break;
            }
            if (x.kind != element_kind::vertex) edge[x.edge].push_back(i);
        }
    }
};

// Colors along the element sequence of strip-edge `e`, member order as stored.
std::vector<int> element_sequence(const strip_structure& ss, std::size_t e, const element_index& idx,
                                  const element_coloring& f) {
    const auto& se = ss.edges[e];
    auto vc = [&](int label) { return f[idx.vertex.at(label)]; };
    const int p = vc(se.members[0]);
    if (idx.spot.contains(e)) return {p, f[idx.spot.at(e)], vc(se.members[1])};
    const int in = f[idx.interior.at(e)];
    const int b0 = f[idx.boundary.at({e, 0})];
    if (se.members.size() == 1) return {p, b0, in};
    return {p, b0, in, f[idx.boundary.at({e, 1})], vc(se.members[1])};
}

struct blank_pass {
    element_coloring coloring;
    base_surjection delta;
};

blank_pass run_blanking(const element_coloring& f, const strip_structure& ss, const std::vector<element>& elements,
                        const base& b, const palette& pal) {
    const element_index idx(elements);
    blank_pass out{f, {}};
    std::map<int, int> vertex_of_color;
    for (int v = 0; v < b.vertex_count; ++v) vertex_of_color[pal.vertex_color[v]] = v;
    // Rule 1: strip-vertices without a vertex color.
    for (const auto& [label, i] : idx.vertex) {
        const auto it = vertex_of_color.find(out.coloring[i]);
        if (it == vertex_of_color.end()) {
            out.coloring[i] = blank_color;
        } else {
            out.delta.vertex[label] = it->second;
        }
    }
    // Rule 2: strip-edges whose element sequence is not a color sequence of a base
    // edge of the same kind and arity.
    for (const auto& [e, members] : idx.edge) {
        const auto seq = element_sequence(ss, e, idx, out.coloring);
        const bool spot = idx.spot.contains(e);
        std::optional<edge_image> image;
        for (std::size_t fe = 0; fe < b.edges.size() && !image; ++fe) {
            if (b.edges[fe].spot != spot || b.edges[fe].members.size() != ss.edges[e].members.size()) continue;
            const auto want = pal.sequence(b, fe);
            if (seq == want) image = edge_image{fe, false};
            if (!image && seq.size() > 1 && std::equal(seq.rbegin(), seq.rend(), want.begin(), want.end()))
                image = edge_image{fe, true};
        }
        if (!image) {
            for (std::size_t i : members) out.coloring[i] = blank_color;
        } else {
            out.delta.edge[e] = *image;
        }
    }
    return out;
}

}  // namespace

element_coloring apply_blanking(const element_coloring& f, const strip_structure& ss,
                                const std::vector<element>& elements, const base& b, const palette& pal) {
    return run_blanking(f, ss, elements, b, pal).coloring;
}

std::optional<blank_result> blank(const element_coloring& f, const strip_structure& ss,
                                  const std::vector<element>& elements, const base& b, const palette& pal) {
    blank_pass pass = run_blanking(f, ss, elements, b, pal);
    std::vector<char> used(pal.size, 0);
    for (int c : pass.coloring)
        if (c >= 0 && c < pal.size) used[c] = 1;
    if (std::find(used.begin(), used.end(), 0) != used.end()) return std::nullopt;
    return blank_result{std::move(pass.coloring), std::move(pass.delta)};
}

// ---------------------------------------------------------------------------
// Strip interiors and the global step
// ---------------------------------------------------------------------------

namespace {

// Per strip-edge data and the interior solver.
class strip_solver {
public:
    strip_solver(const strip_edge& e, const pattern& h, run_notes* notes) : e_(e), h_(h), notes_(notes) {
        hosts_ = e.s.host_positions();
        host_rank_.assign(e.s.j.n(), -1);
        for (std::size_t i = 0; i < hosts_.size(); ++i) host_rank_[hosts_[i]] = static_cast<int>(i);
        in_boundary_.assign(e.s.j.n(), 0);
        for (std::size_t m = 0; m < e.members.size(); ++m) {
            vertex_list b;
            if (auto z = e.s.marker_of(e.members[m]))
                for (vertex x : e.s.j.neighbors(*z)) {
                    b.push_back(x);
                    in_boundary_[x] = 1;
                }
            std::sort(b.begin(), b.end());
            boundary_.push_back(std::move(b));
        }
        for (vertex x : hosts_)
            if (!in_boundary_[x]) interior_.push_back(x);
    }

    const vertex_list& candidates(token_slot s) const {
        static const vertex_list none;
        switch (s.kind) {
            case slot_kind::interior: return interior_;
            case slot_kind::boundary: return boundary_[s.member];
            case slot_kind::spot: return boundary_.empty() ? none : boundary_[0];
        }
        return none;
    }

    int capacity(token_slot s) const { return static_cast<int>(candidates(s).size()); }

    // Best consistent realization, or absent if there is none.
    std::optional<strip_realization> solve(const std::vector<placed_token>& tokens, const token_set& ts) {
        if (auto it = cache_.find(tokens); it != cache_.end()) return it->second;
        auto result = compute(tokens, ts);
        cache_.emplace(tokens, result);
        return result;
    }

    // Maximum matching inside the strip after removing the given J positions.
    const matching& interior_matching(const std::vector<char>& kept) {
        if (auto it = interiors_.find(kept); it != interiors_.end()) return it->second;
        vertex_list keep;
        for (vertex x : hosts_)
            if (kept[x]) keep.push_back(x);
        const graph sub = e_.s.j.induced(keep);
        matching local;
        if (e_.cert.kind == certificate_kind::fuzzy && e_.cert.model) {
            vertex_list ranks;
            for (vertex x : keep) ranks.push_back(host_rank_[x]);
            local = max_igm_fuzzy_ca(restrict_model(*e_.cert.model, ranks), h_);
            note_count(notes_, "interior_fuzzy");
        } else if (small_alpha()) {
            local = max_igm_small_alpha(sub, h_, default_alpha_bound, true);
            note_count(notes_, "interior_small_alpha");
        } else {
            local = brute_force_max_igm(sub, h_);
            note_deviation(notes_, "strip-interior-bruteforce");
            note_count(notes_, "interior_bruteforce");
        }
        for (auto& o : local.occurrences)
            for (vertex& v : o.vertices) v = e_.s.nodes[keep[v]].id;
        return interiors_.emplace(kept, std::move(local)).first->second;
    }

private:
    bool small_alpha() {
        if (!alpha_small_) {
            alpha_small_ = e_.cert.kind == certificate_kind::alpha4 ||
                           brute_force_mis_bounded(e_.s.j, default_alpha_bound + 1).size <= default_alpha_bound;
        }
        return *alpha_small_;
    }

    std::optional<strip_realization> compute(const std::vector<placed_token>& tokens, const token_set& ts) {
        const graph& j = e_.s.j;
        // Groups at each boundary; a spot counts at both ends.
        std::vector<int> boundary_group(e_.members.size(), -1);
        for (const auto& pt : tokens) {
            std::vector<int> ms;
            if (pt.slot.kind == slot_kind::boundary) ms.push_back(pt.slot.member);
            if (pt.slot.kind == slot_kind::spot)
                for (std::size_t m = 0; m < e_.members.size(); ++m) ms.push_back(static_cast<int>(m));
            for (int m : ms) {
                if (boundary_group[m] >= 0 && boundary_group[m] != ts.group(pt.token)) return std::nullopt;
                boundary_group[m] = ts.group(pt.token);
            }
        }
        std::vector<placed_token> todo;
        for (const auto& pt : tokens)
            if (std::find(boundary_group.begin(), boundary_group.end(), ts.group(pt.token)) != boundary_group.end())
                todo.push_back(pt);
        std::stable_sort(todo.begin(), todo.end(), [&](const placed_token& a, const placed_token& b) {
            return ts.group(a.token) == boundary_group[0] && ts.group(b.token) != boundary_group[0];
        });

        std::optional<strip_realization> best;
        vertex_list image(todo.size(), -1);
        std::vector<char> used(j.n(), 0);
        auto consistent = [&](std::size_t i, vertex x) {
            for (std::size_t p = 0; p < i; ++p) {
                const vertex y = image[p];
                const int ta = todo[i].token, tb = todo[p].token;
                if (ts.group(ta) == ts.group(tb)) {
                    if (j.adjacent(x, y) != h_.g().adjacent(ts.pattern_vertex(ta), ts.pattern_vertex(tb)))
                        return false;
                } else if (j.adjacent(x, y)) {
                    return false;
                }
            }
            return true;
        };
        auto finish = [&]() {
            std::vector<char> kept(j.n(), 0);
            for (vertex x : interior_) kept[x] = 1;
            for (vertex x : image) {
                kept[x] = 0;
                for (vertex y : j.neighbors(x)) kept[y] = 0;
            }
            const matching& inner = interior_matching(kept);
            if (best && static_cast<int>(best->interior.size()) >= inner.size()) return;
            strip_realization s;
            for (std::size_t i = 0; i < todo.size(); ++i)
                s.realized.push_back({e_.s.nodes[image[i]].id, todo[i].token});
            s.interior = inner.occurrences;
            best = std::move(s);
        };
        auto place = [&](auto&& self, std::size_t i) -> void {
            if (i == todo.size()) {
                finish();
                return;
            }
            for (vertex x : candidates(todo[i].slot)) {
                if (used[x] || !consistent(i, x)) continue;
                used[x] = 1;
                image[i] = x;
                self(self, i + 1);
                used[x] = 0;
            }
        };
        place(place, 0);
        return best;
    }

    const strip_edge& e_;
    const pattern& h_;
    run_notes* notes_;
    vertex_list hosts_;
    std::vector<int> host_rank_;
    std::vector<char> in_boundary_;
    std::vector<vertex_list> boundary_;
    vertex_list interior_;
    std::optional<bool> alpha_small_;
    std::map<std::vector<placed_token>, std::optional<strip_realization>> cache_;
    std::map<std::vector<char>, matching> interiors_;
};

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

struct slot_ref {
    std::size_t edge = 0;
    token_slot slot;
    std::vector<int> labels;  // strip-vertices whose boundary the slot lies in
    int capacity = 0;
};

class pipeline {
public:
    pipeline(const graph& g, const strip_structure& ss, const pattern& h, int k, const claw_free_options& opt,
             run_notes& notes)
        : g_(g), ss_(ss), h_(h), k_(k), opt_(opt), notes_(notes), ts_{h.h(), k} {
        for (const auto& e : ss.edges) solvers_.emplace_back(e, h, &notes);
    }

    strip_solver& solver(std::size_t e) { return solvers_[e]; }

    // Keeps only witnesses that pass validation.
    std::optional<matching> accept(std::optional<matching> w, std::span<const strip_realization* const> parts) {
        if (w && !is_valid_matching(g_, h_, *w)) {
            note_deviation(&notes_, "rejected-invalid-witness");
            note_count(&notes_, "rejected_witnesses");
            return std::nullopt;
        }
        if (w) {
            classes_.assign(g_.n(), 0);
            for (const auto* p : parts)
                for (const auto& rv : p->realized) classes_[rv.host] = ts_.group(rv.token) + 1;
        }
        return w;
    }

    const std::vector<int>& classes() const { return classes_; }

    // Natural colorings of embedded bases: joint placement of all tokens on slots.
    std::optional<matching> run_exhaustive() {
        build_slots();
        order_tokens();
        placement_.assign(ts_.size(), -1);
        label_group_.clear();
        label_vertices_.clear();
        load_.assign(slots_.size(), 0);
        std::optional<matching> out;
        place(0, out);
        return out;
    }

    // Colorings drawn from the given source for every base satisfying both conditions.
    std::optional<matching> run_bases(bool literal, std::uint64_t seed) {
        const auto elements = elements_of(ss_);
        std::mt19937_64 rng(seed);
        std::optional<matching> out;
        std::int64_t budget = opt_.literal_cap;
        enumerate_bases(h_.h(), k_, [&](const base& b) {
            note_count(&notes_, "bases");
            if (!check_condition1(b, h_) || !check_condition2(b, h_)) return false;
            note_count(&notes_, "bases_kept");
            const palette pal(b);
            element_coloring f(elements.size(), 0);
            auto try_coloring = [&]() {
                note_count(&notes_, "colorings");
                const auto r = blank(f, ss_, elements, b, pal);
                if (!r) return false;
                if (auto w = steps_after_blanking(b, *r)) {
                    out = std::move(w);
                    return true;
                }
                return false;
            };
            if (literal) {
                if (elements.empty()) return false;
                for (;;) {
                    if (--budget < 0) throw size_limit_error("literal coloring mode exceeds its cap");
                    if (try_coloring()) return true;
                    std::size_t i = 0;
                    while (i < f.size() && ++f[i] == pal.size) f[i++] = 0;
                    if (i == f.size()) return false;
                }
            }
            std::uniform_int_distribution<int> pick(0, pal.size - 1);
            for (std::int64_t trial = 0; trial < opt_.trials; ++trial) {
                for (int& c : f) c = pick(rng);
                if (try_coloring()) return true;
            }
            return false;
        });
        return out;
    }

private:
    std::optional<matching> steps_after_blanking(const base& b, const blank_result& r) {
        std::vector<const strip_realization*> parts;
        std::vector<std::optional<strip_realization>> keep;
        keep.reserve(r.delta.edge.size());
        for (const auto& [e, image] : r.delta.edge) {
            std::vector<placed_token> tokens;
            for (int t = 0; t < ts_.size(); ++t) {
                if (b.token_edge[t] != static_cast<int>(image.base_edge)) continue;
                token_slot s = b.token_place[t];
                if (s.kind == slot_kind::boundary && image.reversed) s.member = 1 - s.member;
                tokens.push_back({t, s});
            }
            keep.push_back(solvers_[e].solve(tokens, ts_));
            if (keep.back()) parts.push_back(&*keep.back());
        }
        return accept(global_matching_step(g_, h_, k_, ts_, parts), parts);
    }

    void build_slots() {
        slots_.clear();
        for (std::size_t i = 0; i < ss_.edges.size(); ++i) {
            const auto& e = ss_.edges[i];
            if (e.members.empty()) continue;
            if (classify_strip(e.s) == strip_kind::spot) {
                slots_.push_back({i, {slot_kind::spot, 0}, e.members, 1});
                continue;
            }
            const int inner = solvers_[i].capacity({slot_kind::interior, 0});
            if (inner > 0) slots_.push_back({i, {slot_kind::interior, 0}, {}, inner});
            for (int m = 0; m < static_cast<int>(e.members.size()); ++m) {
                const int cap = solvers_[i].capacity({slot_kind::boundary, m});
                if (cap > 0) slots_.push_back({i, {slot_kind::boundary, m}, {e.members[m]}, cap});
            }
        }
    }

    // Breadth-first order of pattern vertices, repeated per group.
    void order_tokens() {
        vertex_list bfs{0};
        std::vector<char> seen(h_.h(), 0);
        seen[0] = 1;
        for (std::size_t i = 0; i < bfs.size(); ++i)
            for (vertex u : h_.g().neighbors(bfs[i]))
                if (!seen[u]) {
                    seen[u] = 1;
                    bfs.push_back(u);
                }
        order_.clear();
        for (int grp = 0; grp < ts_.k; ++grp)
            for (vertex v : bfs) order_.push_back(grp * ts_.h + v);
    }

    bool fits(int t, const slot_ref& s) const {
        const int grp = ts_.group(t), v = ts_.pattern_vertex(t);
        // Condition 1 against placed neighbours of the same group.
        for (vertex u : h_.g().neighbors(v)) {
            const int other = placement_[grp * ts_.h + u];
            if (other < 0) continue;
            const slot_ref& o = slots_[other];
            if (o.edge == s.edge) continue;
            if (!share_any(o.labels, s.labels)) return false;
        }
        // Condition 2 at every strip-vertex whose boundary holds the slot.
        for (int r : s.labels) {
            const auto it = label_group_.find(r);
            if (it == label_group_.end() || it->second.second == 0) continue;
            if (it->second.first != grp) return false;
            for (int w : label_vertices_.at(r))
                if (!h_.g().adjacent(v, w)) return false;
        }
        return true;
    }

    void push(int t, int si) {
        placement_[t] = si;
        ++load_[si];
        for (int r : slots_[si].labels) {
            auto& entry = label_group_[r];
            entry.first = ts_.group(t);
            ++entry.second;
            label_vertices_[r].push_back(ts_.pattern_vertex(t));
        }
    }

    void pop(int t, int si) {
        placement_[t] = -1;
        --load_[si];
        for (int r : slots_[si].labels) {
            --label_group_[r].second;
            label_vertices_[r].pop_back();
        }
    }

    void place(std::size_t i, std::optional<matching>& out) {
        if (out) return;
        if (i == order_.size()) {
            evaluate(out);
            return;
        }
        const int t = order_[i];
        const int grp = ts_.group(t);
        const std::size_t pos = i % ts_.h;
        // Groups are interchangeable: slot sequences are non-decreasing across groups.
        int floor = 0;
        if (grp > 0) {
            bool equal_prefix = true;
            for (std::size_t p = 0; p < pos && equal_prefix; ++p)
                equal_prefix = placement_[order_[(grp - 1) * ts_.h + p]] == placement_[order_[grp * ts_.h + p]];
            if (equal_prefix) floor = placement_[order_[(grp - 1) * ts_.h + pos]];
        }
        for (int si = floor; si < static_cast<int>(slots_.size()); ++si) {
            if (load_[si] >= slots_[si].capacity || !fits(t, slots_[si])) continue;
            push(t, si);
            place(i + 1, out);
            pop(t, si);
            if (out) return;
        }
    }

    void evaluate(std::optional<matching>& out) {
        note_count(&notes_, "placements");
        std::map<std::size_t, std::vector<placed_token>> per_edge;
        for (int t = 0; t < ts_.size(); ++t) per_edge[slots_[placement_[t]].edge].push_back({t, slots_[placement_[t]].slot});
        std::vector<std::optional<strip_realization>> keep;
        keep.reserve(per_edge.size());
        std::vector<const strip_realization*> parts;
        for (auto& [e, tokens] : per_edge) {
            std::sort(tokens.begin(), tokens.end());
            keep.push_back(solvers_[e].solve(tokens, ts_));
            if (keep.back()) parts.push_back(&*keep.back());
        }
        out = accept(global_matching_step(g_, h_, k_, ts_, parts), parts);
    }

    const graph& g_;
    const strip_structure& ss_;
    const pattern& h_;
    int k_;
    const claw_free_options& opt_;
    run_notes& notes_;
    token_set ts_;
    std::vector<strip_solver> solvers_;
    std::vector<int> classes_;
    std::vector<slot_ref> slots_;
    std::vector<int> order_;
    std::vector<int> placement_;
    std::vector<int> load_;
    std::map<int, std::pair<int, int>> label_group_;  // label -> (group, token count)
    std::map<int, std::vector<int>> label_vertices_;
};

// False also when the graph is too large for the independence oracle.
bool alpha_at_most(const graph& g, int bound) {
    try {
        return brute_force_mis_bounded(g, bound + 1).size <= bound;
    } catch (const size_limit_error&) {
        return false;
    }
}

void require_conforming_kinds(const strip_structure& ss) {
    for (const auto& e : ss.edges) {
        if (e.members.empty()) continue;
        const strip_kind kind = classify_strip(e.s);
        if (kind == strip_kind::neither)
            throw input_error("strip-edge " + std::to_string(e.id) + " is neither a spot nor a stripe");
    }
}

}  // namespace

std::optional<strip_realization> best_realization(const strip_edge& e, const pattern& h, const token_set& ts,
                                                  std::vector<placed_token> tokens, run_notes* notes) {
    std::sort(tokens.begin(), tokens.end());
    strip_solver solver(e, h, notes);
    return solver.solve(tokens, ts);
}

std::optional<matching> global_matching_step(const graph& g, const pattern& h, int k, const token_set& ts,
                                             std::span<const strip_realization* const> parts) {
    int interior = 0;
    for (const auto* p : parts) interior += static_cast<int>(p->interior.size());
    std::vector<vertex_list> classes(ts.k);
    for (const auto* p : parts)
        for (const auto& rv : p->realized) classes[ts.group(rv.token)].push_back(rv.host);
    std::vector<occurrence> found;
    for (auto& cls : classes) {
        if (static_cast<int>(cls.size()) < h.h()) continue;
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        const auto occs = enumerate_occurrences(g.induced(cls), h);
        if (occs.empty()) continue;
        occurrence o = occs.front();
        for (vertex& v : o.vertices) v = cls[v];
        found.push_back(std::move(o));
    }
    if (static_cast<int>(found.size()) < k - interior) return std::nullopt;
    matching w;
    for (const auto* p : parts) w.occurrences.insert(w.occurrences.end(), p->interior.begin(), p->interior.end());
    for (auto& o : found) w.occurrences.push_back(std::move(o));
    if (w.size() > k) w.occurrences.resize(k);
    return w;
}

claw_free_result run_pipeline(const graph& g, const strip_structure& ss, const pattern& h, int k,
                              const claw_free_options& options) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (!h.is_connected()) throw input_error("pattern must be connected");
    if (h.h() * k > options.token_cap)
        throw size_limit_error("h * k = " + std::to_string(h.h() * k) + " exceeds the token cap " +
                               std::to_string(options.token_cap));
    require_conforming_kinds(ss);
    claw_free_result res;
    res.answer = answer_kind::yes;
    if (k == 0) return res;

    // Strips without members touch nothing else; their best matchings add up.
    matching isolated;
    for (const auto& e : ss.edges) {
        if (!e.members.empty()) continue;
        strip_solver alone(e, h, &res.notes);
        std::vector<char> kept(e.s.j.n(), 0);
        for (vertex x : e.s.host_positions()) kept[x] = 1;
        for (const auto& o : alone.interior_matching(kept).occurrences) isolated.occurrences.push_back(o);
    }
    if (isolated.size() >= k) {
        isolated.occurrences.resize(k);
        res.witness = std::move(isolated);
        return res;
    }
    const int rest = k - isolated.size();
    const bool any_rest = std::any_of(ss.edges.begin(), ss.edges.end(), [](const auto& e) { return !e.members.empty(); });

    std::optional<matching> found;
    if (any_rest) {
        pipeline sub(g, ss, h, rest, options, res.notes);
        switch (options.mode) {
            case coloring_mode::exhaustive: found = sub.run_exhaustive(); break;
            case coloring_mode::literal: found = sub.run_bases(true, options.seed); break;
            case coloring_mode::random: found = sub.run_bases(false, options.seed); break;
        }
        if (found) res.classes = sub.classes();
    }
    if (!found) {
        res.answer = options.mode == coloring_mode::random ? answer_kind::unknown : answer_kind::no;
        return res;
    }
    res.witness = std::move(isolated);
    for (auto& o : found->occurrences) res.witness.occurrences.push_back(std::move(o));
    if (!is_valid_matching(g, h, res.witness)) throw internal_error("combined witness is not a valid matching");
    return res;
}

claw_free_result solve_igm_claw_free(const graph& g, const pattern& h, int k, structure_source source,
                                     const strip_structure* given, const fuzzy_arc_model* whole_model,
                                     const claw_free_options& options) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (!h.is_connected()) throw input_error("pattern must be connected");
    if (!star_free(g, 3)) throw input_error("graph is not claw-free");
    claw_free_result res;
    res.answer = answer_kind::yes;
    if (k == 0) return res;

    if (!options.force_pipeline) {
        if (alpha_at_most(g, default_alpha_bound)) {
            res.notes.count("dispatch_small_alpha");
            if (auto m = solve_igm_small_alpha(g, h, k, default_alpha_bound, true)) {
                res.witness = std::move(*m);
            } else {
                res.answer = answer_kind::no;
            }
            return res;
        }
        if (whole_model) {
            if (!(realize(*whole_model) == g)) throw input_error("fuzzy model does not realize the graph");
            res.notes.count("dispatch_fuzzy");
            if (auto m = solve_igm_fuzzy_ca(*whole_model, h, k)) {
                res.witness = std::move(*m);
            } else {
                res.answer = answer_kind::no;
            }
            return res;
        }
    }

    if (source == structure_source::given) {
        if (!given) throw input_error("needs strip-structure");
        const auto rep = validate_strip_structure(g, *given);
        if (!rep.ok()) throw input_error("strip-structure does not validate");
        return run_pipeline(g, *given, h, k, options);
    }

    // Derived structures: components are independent, so their matchings add up.
    const auto comps = connected_components(g);
    if (comps.size() > 1) {
        matching total;
        bool saw_unknown = false;
        for (const auto& comp : comps) {
            if (total.size() >= k) break;
            const graph sub = g.induced(comp);
            matching best;
            for (int want = 1; total.size() + best.size() < k; ++want) {
                claw_free_result part = solve_igm_claw_free(sub, h, want, source, nullptr, nullptr, options);
                for (const auto& d : part.notes.deviations) res.notes.deviate(d);
                for (const auto& [key, n] : part.notes.counters) res.notes.count(key, n);
                if (part.answer != answer_kind::yes) {
                    saw_unknown = saw_unknown || part.answer == answer_kind::unknown;
                    break;
                }
                best = std::move(part.witness);
                for (auto& o : best.occurrences)
                    for (vertex& v : o.vertices) v = comp[v];
            }
            for (auto& o : best.occurrences) total.occurrences.push_back(std::move(o));
        }
        if (total.size() >= k) {
            total.occurrences.resize(k);
            res.witness = std::move(total);
        } else {
            res.answer = saw_unknown ? answer_kind::unknown : answer_kind::no;
        }
        return res;
    }

    std::optional<strip_structure> ss;
    if (source == structure_source::trivial) {
        ss = trivial_strip_structure(g);
    } else {
        ss = line_graph_strip_structure(g);
        if (!ss) throw input_error("needs strip-structure: graph is not a line graph");
    }
    return run_pipeline(g, *ss, h, k, options);
}

}  // namespace igm
