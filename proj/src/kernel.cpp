#include "igm/kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "igm/errors.hpp"
#include "igm/fuzzy_solver.hpp"
#include "igm/models.hpp"
#include "igm/oracles.hpp"

namespace igm {

namespace {

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

vertex_list compose(const vertex_list& outer, const vertex_list& inner) {
    vertex_list out;
    out.reserve(inner.size());
    for (vertex v : inner) out.push_back(outer[v]);
    return out;
}

vertex_list complement(int n, const vertex_list& removed) {
    std::vector<char> gone(n, 0);
    for (vertex v : removed) gone[v] = 1;
    vertex_list keep;
    for (vertex v = 0; v < n; ++v)
        if (!gone[v]) keep.push_back(v);
    return keep;
}

// Strip positions of the host nodes adjacent to the marker of `label`.
vertex_list boundary_positions(const strip& s, int label) {
    vertex_list out;
    const auto z = s.marker_of(label);
    if (!z) return out;
    for (vertex x : s.j.neighbors(*z))
        if (s.nodes[x].kind == strip_node_kind::host) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

vertex_list interior_positions(const strip& s) {
    vertex_list out;
    for (vertex x : s.host_positions()) {
        const auto nb = s.j.neighbors(x);
        if (std::none_of(nb.begin(), nb.end(), [&](vertex y) { return s.nodes[y].kind == strip_node_kind::marker; }))
            out.push_back(x);
    }
    return out;
}

bool alpha_at_most(const graph& g, int bound) {
    try {
        return brute_force_mis_bounded(g, bound + 1).size <= bound;
    } catch (const size_limit_error&) {
        return false;
    }
}

// Greedy maximal induced H-matching: take an occurrence, delete it and its neighbours.
int greedy_matching_size(const graph& g, const pattern& h) {
    std::vector<char> alive(g.n(), 1);
    int found = 0;
    for (;;) {
        vertex_list live;
        for (vertex v = 0; v < g.n(); ++v)
            if (alive[v]) live.push_back(v);
        const auto occs = enumerate_occurrences(g.induced(live), h);
        if (occs.empty()) return found;
        ++found;
        for (vertex v : occs.front().vertices) {
            alive[live[v]] = 0;
            for (vertex u : g.neighbors(live[v])) alive[u] = 0;
        }
    }
}

}  // namespace

strip_structure restrict_structure(const strip_structure& ss, std::span<const vertex> keep) {
    std::map<vertex, vertex> renumber;
    for (std::size_t i = 0; i < keep.size(); ++i) renumber[keep[i]] = static_cast<vertex>(i);
    strip_structure out;
    std::set<int> used;
    for (const auto& e : ss.edges) {
        vertex_list positions;
        vertex_list host_ranks;
        int rank = 0;
        for (vertex x = 0; x < static_cast<int>(e.s.nodes.size()); ++x) {
            const strip_node& node = e.s.nodes[x];
            if (node.kind == strip_node_kind::marker) {
                positions.push_back(x);
                continue;
            }
            if (renumber.contains(node.id)) {
                positions.push_back(x);
                host_ranks.push_back(rank);
            }
            ++rank;
        }
        if (host_ranks.empty()) continue;
        strip_edge r;
        r.id = e.id;
        r.members = e.members;
        r.s.j = e.s.j.induced(positions);
        for (vertex x : positions) {
            strip_node node = e.s.nodes[x];
            if (node.kind == strip_node_kind::host) node.id = renumber.at(node.id);
            r.s.nodes.push_back(node);
        }
        r.cert = e.cert;
        if (r.cert.model) r.cert.model = restrict_model(*r.cert.model, host_ranks);
        used.insert(r.members.begin(), r.members.end());
        out.edges.push_back(std::move(r));
    }
    for (int label : ss.vertices)
        if (used.contains(label)) out.vertices.push_back(label);
    return out;
}

reduced_graph prune_useless_vertices(const graph& g, const pattern& h) {
    std::vector<char> useful(g.n(), 0);
    for (const auto& o : enumerate_occurrences(g, h))
        for (vertex v : o.vertices) useful[v] = 1;
    reduced_graph out;
    for (vertex v = 0; v < g.n(); ++v)
        if (useful[v]) out.origin.push_back(v);
    out.g = g.induced(out.origin);
    return out;
}

int dis_degree(const strip_structure& ss, int label) {
    std::set<int> others;
    for (std::size_t i : ss.edges_at(label))
        for (int r : ss.edges[i].members)
            if (r != label) others.insert(r);
    return static_cast<int>(others.size());
}

int dis_degree_threshold(int h, int k) { return 2 * h * (k - 1) + h; }

dis_degree_result apply_dis_degree_rule(const graph& g, const strip_structure& ss, const pattern& h, int k,
                                        int label) {
    if (dis_degree(ss, label) < dis_degree_threshold(h.h(), k))
        throw input_error("dis-degree of strip-vertex " + std::to_string(label) + " is below " +
                          std::to_string(dis_degree_threshold(h.h(), k)));
    dis_degree_result out;
    out.reduced.origin = complement(g.n(), ss.clique_at(label));
    out.reduced.g = g.induced(out.reduced.origin);
    out.k = k - 1;
    return out;
}

std::vector<char> classify_promising(const strip_structure& ss, const pattern& h) {
    std::vector<char> out;
    for (const auto& e : ss.edges) {
        const vertex_list inner = interior_positions(e.s);
        out.push_back(!enumerate_occurrences(e.s.j.induced(inner), h).empty() ? 1 : 0);
    }
    return out;
}

reduction_result reduction_step_nonpromising(const strip_structure& ss, int x, int y, const pattern& h) {
    const std::vector<int> pair = x == y ? std::vector<int>{x} : std::vector<int>{std::min(x, y), std::max(x, y)};
    const auto promising = classify_promising(ss, h);
    std::vector<std::size_t> on_pair;
    for (std::size_t i = 0; i < ss.edges.size(); ++i) {
        std::vector<int> ms = ss.edges[i].members;
        std::sort(ms.begin(), ms.end());
        if (ms == pair && !promising[i]) on_pair.push_back(i);
    }
    const int hh = h.h();
    const int d = static_cast<int>(on_pair.size());
    if (d <= 2 * hh)
        throw input_error("reduction step needs more than " + std::to_string(2 * hh) +
                          " non-promising strip-edges on the pair");
    std::vector<std::size_t> helpful, other;
    for (std::size_t i : on_pair) (classify_strip(ss.edges[i].s) == strip_kind::stripe ? helpful : other).push_back(i);
    const int d_helpful = static_cast<int>(helpful.size());
    std::set<std::size_t> selected(helpful.begin(), helpful.begin() + std::min(d_helpful, 2 * hh));
    if (d_helpful < hh) selected.insert(other.begin(), other.begin() + std::min<int>(hh - d_helpful, other.size()));
    reduction_result out;
    for (std::size_t i : on_pair) {
        if (selected.contains(i)) {
            out.kept_edges.push_back(ss.edges[i].id);
            continue;
        }
        const auto hosts = ss.edges[i].s.host_vertices();
        out.removed.insert(out.removed.end(), hosts.begin(), hosts.end());
    }
    std::sort(out.removed.begin(), out.removed.end());
    return out;
}

// ---------------------------------------------------------------------------
// Bounding loop
// ---------------------------------------------------------------------------

bound_result bound_strip_graph(const graph& g, const pattern& h, int k, structure_provider provider,
                               const strip_structure* manual) {
    if (!h.is_complete()) throw input_error("kernelization requires a complete pattern");
    if (k < 0) throw input_error("k must be nonnegative");
    if (!star_free(g, 3)) throw input_error("graph is not claw-free");
    if (provider == structure_provider::manual && !manual) throw input_error("needs strip-structure");

    bound_result out;
    out.k = k;
    out.reduced.g = g;
    for (vertex v = 0; v < g.n(); ++v) out.reduced.origin.push_back(v);
    std::optional<strip_structure> current;
    if (manual) {
        if (!validate_strip_structure(g, *manual).ok()) throw input_error("strip-structure does not validate");
        current = *manual;
    }
    const int hh = h.h();

    auto decide = [&](bool yes, std::string why) {
        out.status = yes ? bound_status::decided_yes : bound_status::decided_no;
        out.detail = std::move(why);
        out.ss.reset();
        return out;
    };
    // Deletes vertices (ids of the current graph) and keeps the manual structure in step.
    auto remove = [&](const vertex_list& keep) -> bool {
        if (current && provider == structure_provider::manual) {
            current = restrict_structure(*current, keep);
            note_deviation(&out.notes, "manual-structure-restricted");
        }
        out.reduced.origin = compose(out.reduced.origin, keep);
        out.reduced.g = out.reduced.g.induced(keep);
        if (current && provider == structure_provider::manual &&
            !validate_strip_structure(out.reduced.g, *current).ok()) {
            out.status = bound_status::partial;
            out.detail = "restricted strip-structure no longer validates";
            out.ss.reset();
            return false;
        }
        return true;
    };

    for (;;) {
        ++out.rounds;
        if (out.k <= 0) return decide(true, "k reached 0");
        // Step 1: vertices outside every occurrence.
        const reduced_graph pruned = prune_useless_vertices(out.reduced.g, h);
        if (pruned.g.n() < out.reduced.g.n()) {
            out.notes.count("pruned_vertices", out.reduced.g.n() - pruned.g.n());
            if (!remove(pruned.origin)) return out;
        }
        const graph& cur = out.reduced.g;
        if (cur.n() == 0) return decide(false, "no occurrence of H");
        if (alpha_at_most(cur, default_alpha_bound)) {
            const bool yes = solve_igm_small_alpha(cur, h, out.k, default_alpha_bound, true).has_value();
            return decide(yes, "independence number at most 4");
        }
        // Step 2: greedy matching, then a strip-structure.
        if (greedy_matching_size(cur, h) >= out.k) return decide(true, "greedy matching reaches k");
        if (provider == structure_provider::line_graph) {
            current = line_graph_strip_structure(cur);
            if (!current) {
                out.status = bound_status::partial;
                out.detail = "graph is not a line graph; no strip-structure can be derived";
                return out;
            }
        }
        const strip_structure& ss = *current;
        // Step 3: dis-degree rule.
        bool changed = false;
        for (int r : ss.vertices) {
            if (dis_degree(ss, r) < dis_degree_threshold(hh, out.k)) continue;
            const auto res = apply_dis_degree_rule(cur, ss, h, out.k, r);
            out.notes.count("dis_degree_rule");
            out.k = res.k;
            if (!remove(res.reduced.origin)) return out;
            changed = true;
            break;
        }
        if (changed) continue;
        // Step 4: promising strip-edges.
        const auto promising = classify_promising(ss, h);
        if (std::count(promising.begin(), promising.end(), 1) >= out.k)
            return decide(true, "at least k promising strip-edges");
        // Step 5: reduction step on a crowded pair.
        std::map<std::vector<int>, int> crowd;
        for (std::size_t i = 0; i < ss.edges.size(); ++i) {
            if (promising[i] || ss.edges[i].members.empty()) continue;
            std::vector<int> ms = ss.edges[i].members;
            std::sort(ms.begin(), ms.end());
            ++crowd[ms];
        }
        for (const auto& [pair, d] : crowd) {
            if (d <= 2 * hh) continue;
            const auto res = reduction_step_nonpromising(ss, pair.front(), pair.back(), h);
            out.notes.count("reduction_step");
            if (!remove(complement(cur.n(), res.removed))) return out;
            changed = true;
            break;
        }
        if (changed) continue;
        out.status = bound_status::reduced;
        out.ss = current;
        out.detail = "no rule applies";
        return out;
    }
}

// ---------------------------------------------------------------------------
// Stripe profiles
// ---------------------------------------------------------------------------

namespace {

// Maximum matchings inside one strip under boundary constraints, memoized per allowed set.
class profile_solver {
public:
    profile_solver(const strip_edge& e, const pattern& h) : e_(e), h_(h) {
        for (int r : e.members) boundaries_.push_back(boundary_positions(e.s, r));
    }

    const vertex_list& boundary(std::size_t m) const { return boundaries_[m]; }

    std::optional<int> weight(int i, int j, profile_join f) {
        const graph& jg = e_.s.j;
        const bool two = e_.members.size() == 2;
        if (!two) j = 0;
        if (two && f == profile_join::clique && i >= 0 && j >= 0 && i + j >= h_.h()) return std::nullopt;
        std::optional<int> best;
        for_subsets(0, i, [&](const vertex_list& x) {
            for_subsets(1, two ? j : -2, [&](const vertex_list& y) {
                if (i >= 0 && j >= 0 && two && !joined(x, y, f)) return;
                std::vector<char> allowed(jg.n(), 0);
                for (vertex v : e_.s.host_positions()) allowed[v] = 1;
                auto forbid_side = [&](std::size_t m, int idx, const vertex_list& chosen) {
                    if (idx < 0) return;
                    for (vertex v : boundaries_[m]) allowed[v] = 0;
                    for (vertex c : chosen)
                        for (vertex v : jg.neighbors(c)) allowed[v] = 0;
                };
                forbid_side(0, i, x);
                if (two) forbid_side(1, j, y);
                const auto value = constrained(allowed, i == -1 ? &boundaries_[0] : nullptr,
                                               two && j == -1 ? &boundaries_[1] : nullptr);
                if (value && (!best || *value > *best)) best = value;
            });
        });
        return best;
    }

private:
    // Calls visit for every subset of the given size of boundary m; size -1 or -2 means one empty call.
    void for_subsets(std::size_t m, int size, const std::function<void(const vertex_list&)>& visit) const {
        if (size < 0) {
            visit({});
            return;
        }
        const vertex_list& b = boundaries_[m];
        if (size > static_cast<int>(b.size())) return;
        vertex_list pick;
        std::function<void(std::size_t)> rec = [&](std::size_t from) {
            if (static_cast<int>(pick.size()) == size) {
                visit(pick);
                return;
            }
            for (std::size_t a = from; a < b.size(); ++a) {
                pick.push_back(b[a]);
                rec(a + 1);
                pick.pop_back();
            }
        };
        rec(0);
    }

    bool joined(const vertex_list& x, const vertex_list& y, profile_join f) const {
        const graph& jg = e_.s.j;
        if (f == profile_join::independent) {
            for (vertex a : x)
                for (vertex b : y)
                    if (jg.adjacent(a, b)) return false;
            return true;
        }
        vertex_list all = x;
        all.insert(all.end(), y.begin(), y.end());
        return is_clique(jg, all);
    }

    int unconstrained(const std::vector<char>& allowed) {
        if (auto it = memo_.find(allowed); it != memo_.end()) return it->second;
        vertex_list keep;
        for (vertex v = 0; v < static_cast<int>(allowed.size()); ++v)
            if (allowed[v]) keep.push_back(v);
        const int value = brute_force_max_igm(e_.s.j.induced(keep), h_).size();
        memo_.emplace(allowed, value);
        return value;
    }

    static bool hits(const occurrence& o, const vertex_list* b) {
        return std::any_of(o.vertices.begin(), o.vertices.end(),
                           [&](vertex v) { return std::binary_search(b->begin(), b->end(), v); });
    }

    std::vector<char> without(std::vector<char> allowed, const occurrence& o) const {
        for (vertex v : o.vertices) {
            allowed[v] = 0;
            for (vertex u : e_.s.j.neighbors(v)) allowed[u] = 0;
        }
        return allowed;
    }

    std::vector<occurrence> occurrences_in(const std::vector<char>& allowed) const {
        vertex_list keep;
        for (vertex v = 0; v < static_cast<int>(allowed.size()); ++v)
            if (allowed[v]) keep.push_back(v);
        auto occs = enumerate_occurrences(e_.s.j.induced(keep), h_);
        for (auto& o : occs)
            for (vertex& v : o.vertices) v = keep[v];
        return occs;
    }

    // Best matching within `allowed` that meets each given boundary in at least one vertex.
    std::optional<int> constrained(const std::vector<char>& allowed, const vertex_list* bx, const vertex_list* by) {
        if (!bx && !by) return unconstrained(allowed);
        if (!bx) std::swap(bx, by);
        std::optional<int> best;
        for (const auto& o : occurrences_in(allowed)) {
            if (!hits(o, bx)) continue;
            const auto rest = without(allowed, o);
            if (!by || hits(o, by)) {
                const int v = 1 + unconstrained(rest);
                if (!best || v > *best) best = v;
                continue;
            }
            for (const auto& o2 : occurrences_in(rest)) {
                if (!hits(o2, by)) continue;
                const int v = 2 + unconstrained(without(rest, o2));
                if (!best || v > *best) best = v;
            }
        }
        return best;
    }

    const strip_edge& e_;
    const pattern& h_;
    std::vector<vertex_list> boundaries_;
    std::map<std::vector<char>, int> memo_;
};

}  // namespace

std::optional<int> stripe_profile_weight(const strip_edge& e, int i, int j, profile_join f, const pattern& h) {
    if (e.members.empty() || e.members.size() > 2) throw input_error("profiles need a strip-edge with 1 or 2 members");
    if (i < -1 || i >= h.h() || j < -1 || j >= h.h()) throw input_error("profile index out of range");
    profile_solver solver(e, h);
    return solver.weight(i, j, f);
}

// ---------------------------------------------------------------------------
// Selection-clique construction
// ---------------------------------------------------------------------------

wis_instance trivial_wis(bool yes) {
    wis_instance w;
    w.g = graph(1);
    w.weights = {0};
    w.tags = {yes ? "trivial-yes" : "trivial-no"};
    w.clique_of = {0};
    w.clique_count = 1;
    w.k_card = yes ? 1 : 2;
    w.k_weight = 0;
    w.trivial = true;
    return w;
}

namespace {

enum class edge_role { none_member, single_stripe, double_stripe, spot };

// Spot vertices: used at the first member only, at the second only, at both, unused.
enum spot_use { at_first = 0, at_second = 1, at_both = 2, unused = 3 };

struct profile_vertex {
    int a0 = 0;  // index at members[0]
    int a1 = 0;  // index at members[1]; 0 for single-member stripes
    std::optional<profile_join> f;
    vertex id = 0;
};

struct edge_clique {
    edge_role role = edge_role::none_member;
    std::vector<profile_vertex> profiles;
    std::array<vertex, 4> spot{};
    vertex single = 0;
};

class wis_builder {
public:
    wis_builder(const graph& g, const strip_structure& ss, const pattern& h, int k)
        : g_(g), ss_(ss), h_(h), k_(k), hh_(h.h()) {}

    wis_instance build() {
        if (!h_.is_complete()) throw input_error("kernelization requires a complete pattern");
        if (k_ <= 0) return trivial_wis(true);
        cliques_.resize(ss_.edges.size());
        for (std::size_t e = 0; e < ss_.edges.size(); ++e)
            if (!edge_selection(e)) return trivial_wis(true);
        for (int x : ss_.vertices) label_clique_[x];
        for (int x : ss_.vertices) {
            type_ia(x);
            type_ib(x);
        }
        pairs_and_triples();
        separate_far_spots();
        for (const auto& [u, rule] : partner_rules_) rule(u);
        for (const auto& [c, members] : clique_members_)
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b) link(members[a], members[b]);
        out_.g = graph(static_cast<int>(out_.weights.size()));
        for (const auto& [u, v] : links_) out_.g.add_edge(u, v);
        out_.k_card = static_cast<int>(ss_.vertices.size() + ss_.edges.size());
        out_.k_weight = k_;
        out_.clique_count = next_clique_;
        return std::move(out_);
    }

private:
    vertex add(std::int64_t weight, std::string tag, int clique) {
        const vertex v = static_cast<vertex>(out_.weights.size());
        out_.weights.push_back(weight);
        out_.tags.push_back(std::move(tag));
        out_.clique_of.push_back(clique);
        clique_members_[clique].push_back(v);
        return v;
    }

    int label_clique(int x) {
        auto it = label_clique_ids_.find(x);
        if (it == label_clique_ids_.end()) it = label_clique_ids_.emplace(x, next_clique_++).first;
        return it->second;
    }

    vertex add_label_vertex(int x, std::int64_t weight, std::string tag) {
        const vertex v = add(weight, std::move(tag), label_clique(x));
        label_clique_[x].push_back(v);
        return v;
    }

    void link(vertex u, vertex v) {
        if (u != v) links_.insert({std::min(u, v), std::max(u, v)});
    }

    void link_all(vertex u, const std::vector<vertex>& vs) {
        for (vertex v : vs) link(u, v);
    }

    std::string edge_name(std::size_t e) const { return "e" + std::to_string(ss_.edges[e].id); }
    static std::string idx(int i) { return std::to_string(i); }

    // Returns false when some stripe weight reaches k.
    bool edge_selection(std::size_t e) {
        const strip_edge& se = ss_.edges[e];
        edge_clique& c = cliques_[e];
        const int clique = next_clique_++;
        if (se.members.empty()) {
            c.role = edge_role::none_member;
            const int w = brute_force_max_igm(se.s.j.induced(se.s.host_positions()), h_).size();
            if (w >= k_) return false;
            c.single = add(w, edge_name(e) + ":whole", clique);
            return true;
        }
        if (se.members.size() == 2 && classify_strip(se.s) == strip_kind::spot) {
            c.role = edge_role::spot;
            const char* names[4] = {"first", "second", "both", "unused"};
            for (int r = 0; r < 4; ++r) c.spot[r] = add(0, edge_name(e) + ":spot-" + names[r], clique);
            return true;
        }
        profile_solver solver(se, h_);
        if (se.members.size() == 1) {
            c.role = edge_role::single_stripe;
            for (int i = -1; i < hh_; ++i) {
                const auto w = solver.weight(i, 0, profile_join::independent);
                if (!w) continue;
                if (*w >= k_) return false;
                c.profiles.push_back({i, 0, std::nullopt, add(*w, edge_name(e) + ":i=" + idx(i), clique)});
            }
            return true;
        }
        c.role = edge_role::double_stripe;
        for (int i = -1; i < hh_; ++i)
            for (int j = -1; j < hh_; ++j)
                for (profile_join f : {profile_join::independent, profile_join::clique}) {
                    const auto w = solver.weight(i, j, f);
                    if (!w) continue;
                    if (*w >= k_) return false;
                    const std::string tag = edge_name(e) + ":i=" + idx(i) + ",j=" + idx(j) +
                                            (f == profile_join::independent ? ",f=I" : ",f=C");
                    c.profiles.push_back({i, j, f, add(*w, tag, clique)});
                }
        return true;
    }

    bool is_stripe(std::size_t e) const {
        return cliques_[e].role == edge_role::single_stripe || cliques_[e].role == edge_role::double_stripe;
    }
    bool is_spot(std::size_t e) const { return cliques_[e].role == edge_role::spot; }

    // Stripe vertices of e selected by pred(index at x, index at the other member, join).
    std::vector<vertex> stripe_where(std::size_t e, int x,
                                     const std::function<bool(int, std::optional<int>, std::optional<profile_join>)>& pred) const {
        std::vector<vertex> out;
        const auto& ms = ss_.edges[e].members;
        const bool first = ms[0] == x;
        for (const auto& p : cliques_[e].profiles) {
            if (cliques_[e].role == edge_role::single_stripe) {
                if (pred(p.a0, std::nullopt, std::nullopt)) out.push_back(p.id);
            } else if (pred(first ? p.a0 : p.a1, first ? p.a1 : p.a0, p.f)) {
                out.push_back(p.id);
            }
        }
        return out;
    }

    // Spot vertices of e: uses relative to strip-vertex x ("here", "there", both, unused).
    std::vector<vertex> spot_where(std::size_t e, int x, bool here, bool there, bool both, bool none) const {
        const bool first = ss_.edges[e].members[0] == x;
        const auto& s = cliques_[e].spot;
        std::vector<vertex> out;
        if (here) out.push_back(s[first ? at_first : at_second]);
        if (there) out.push_back(s[first ? at_second : at_first]);
        if (both) out.push_back(s[at_both]);
        if (none) out.push_back(s[unused]);
        return out;
    }

    std::vector<std::size_t> edges_on(int x) const { return ss_.edges_at(x); }

    std::vector<std::size_t> edges_on_pair(int x, int y) const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < ss_.edges.size(); ++e) {
            const auto& ms = ss_.edges[e].members;
            if (ms.size() == 2 && contains(ms, x) && contains(ms, y)) out.push_back(e);
        }
        return out;
    }

    static bool is_i(std::optional<profile_join> f) { return !f || *f == profile_join::independent; }
    static bool is_c(std::optional<profile_join> f) { return f && *f == profile_join::clique; }

    void type_ia(int x) {
        const auto ex = edges_on(x);
        std::vector<int> dist(ex.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
            if (pos == ex.size()) {
                if (left == 0) add_distribution(x, ex, dist);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                if (v > 1 && is_spot(ex[pos])) break;
                dist[pos] = v;
                rec(pos + 1, left - v);
            }
            dist[pos] = 0;
        };
        rec(0, hh_);
        std::fill(dist.begin(), dist.end(), 0);
        add_distribution(x, ex, dist);
    }

    void add_distribution(int x, const std::vector<std::size_t>& ex, const std::vector<int>& dist) {
        const bool zero = std::all_of(dist.begin(), dist.end(), [](int v) { return v == 0; });
        std::string tag = "x" + std::to_string(x) + ":P=[";
        for (std::size_t i = 0; i < ex.size(); ++i) {
            tag += (i ? "," : "") + edge_name(ex[i]) + "=" + std::to_string(dist[i]);
        }
        tag += "]";
        const vertex v = add_label_vertex(x, zero ? 0 : 1, tag);
        for (std::size_t i = 0; i < ex.size(); ++i) {
            const std::size_t e = ex[i];
            const int want = dist[i];
            if (is_stripe(e)) {
                // Type Ia items 1-2: the stripe reserves `want` boundary vertices, X and Y independent.
                link_all(v, stripe_where(e, x, [&](int a, std::optional<int>, std::optional<profile_join> f) {
                             return is_c(f) || a != want;
                         }));
            } else if (is_spot(e)) {
                if (want == 0 && !zero) link_all(v, spot_where(e, x, true, true, true, false));
                if (want == 0 && zero) link_all(v, spot_where(e, x, true, false, true, false));
                if (want == 1) link_all(v, spot_where(e, x, false, true, true, true));
            }
        }
    }

    void type_ib(int x) {
        const auto ex = edges_on(x);
        for (std::size_t e : ex) {
            if (!is_stripe(e)) continue;
            const vertex v = add_label_vertex(x, 0, "x" + std::to_string(x) + ":Ib:" + edge_name(e));
            // Items 1-2.
            link_all(v, stripe_where(e, x, [](int a, std::optional<int>, std::optional<profile_join> f) {
                         return is_c(f) || a != -1;
                     }));
            for (std::size_t e2 : ex) {
                if (e2 == e) continue;
                if (is_stripe(e2)) {
                    // Items 3-4.
                    link_all(v, stripe_where(e2, x, [](int a, std::optional<int>, std::optional<profile_join> f) {
                                 return is_c(f) || a != 0;
                             }));
                } else if (is_spot(e2)) {
                    // Item 5.
                    link_all(v, spot_where(e2, x, true, true, true, false));
                }
            }
        }
    }

    // Two spots at x used only from their far ends by occurrences at distinct far ends
    // would put two adjacent vertices of C(x) into different occurrences.
    void separate_far_spots() {
        for (int x : ss_.vertices) {
            const auto ex = edges_on(x);
            for (std::size_t a = 0; a < ex.size(); ++a)
                for (std::size_t b = a + 1; b < ex.size(); ++b) {
                    const std::size_t e = ex[a], f = ex[b];
                    if (!is_spot(e) || !is_spot(f)) continue;
                    if (far_end(e, x) == far_end(f, x)) continue;
                    link(spot_where(e, x, false, true, false, false)[0], spot_where(f, x, false, true, false, false)[0]);
                }
        }
    }

    int far_end(std::size_t e, int x) const {
        const auto& ms = ss_.edges[e].members;
        return ms[0] == x ? ms[1] : ms[0];
    }

    // Shared items for types II and III: strip-edges meeting the set `group` in exactly one
    // strip-vertex must not use that strip-vertex.
    void link_outside(vertex v, const std::vector<int>& group) {
        for (std::size_t e = 0; e < ss_.edges.size(); ++e) {
            const auto& ms = ss_.edges[e].members;
            int inside = 0, at = -1;
            for (int r : ms)
                if (contains(group, r)) {
                    ++inside;
                    at = r;
                }
            if (inside != 1) continue;
            if (is_spot(e)) {
                link_all(v, spot_where(e, at, true, true, true, false));
            } else if (is_stripe(e)) {
                link_all(v, stripe_where(e, at, [](int a, std::optional<int>, std::optional<profile_join>) {
                             return a != 0;
                         }));
            }
        }
    }

    // Stripes on the given pairs other than `skip` must leave both boundaries alone.
    void link_pair_stripes(vertex v, const std::vector<std::size_t>& es, std::optional<std::size_t> skip) {
        for (std::size_t e : es) {
            if (skip && e == *skip) continue;
            if (!is_stripe(e)) continue;
            const int x = ss_.edges[e].members[0];
            link_all(v, stripe_where(e, x, [](int a, std::optional<int> b, std::optional<profile_join>) {
                         return !(a == 0 && b.value_or(0) == 0);
                     }));
        }
    }

    // Links u to every vertex of the cliques of `labels` except the listed partners,
    // once all vertices exist.
    void defer_partners(vertex u, std::vector<int> labels, std::vector<vertex> partners) {
        partner_rules_.emplace_back(u, [this, labels, partners](vertex from) {
            for (int r : labels)
                for (vertex w : label_clique_[r])
                    if (!contains(partners, w)) link(from, w);
        });
    }

    void pairs_and_triples() {
        std::set<std::pair<int, int>> pairs;
        for (const auto& e : ss_.edges)
            if (e.members.size() == 2) pairs.insert({std::min(e.members[0], e.members[1]), std::max(e.members[0], e.members[1])});
        for (const auto& [x, y] : pairs) {
            const auto exy = edges_on_pair(x, y);
            int spots = 0;
            for (std::size_t e : exy) spots += is_spot(e) ? 1 : 0;
            if (spots > hh_)
                out_.warnings.push_back("strip-vertices " + std::to_string(x) + "," + std::to_string(y) + " carry " +
                                        std::to_string(spots) + " spots, more than h");
            for (std::size_t e : exy) {
                if (!is_stripe(e)) continue;
                // Type IIa, only when 0 < spots < h - 1.
                if (spots > 0 && spots < hh_ - 1) {
                    const std::string tag = ":IIa:" + std::to_string(x) + "-" + std::to_string(y) + ":" + edge_name(e);
                    const vertex vx = add_label_vertex(x, 1, "x" + std::to_string(x) + tag);
                    const vertex vy = add_label_vertex(y, 0, "x" + std::to_string(y) + tag);
                    for (auto [u, self] : {std::pair{vx, x}, std::pair{vy, y}}) {
                        for (std::size_t e2 : exy)
                            if (is_spot(e2)) link_all(u, spot_where(e2, self, true, true, false, true));
                        const int need = hh_ - spots;
                        link_all(u, stripe_where(e, self, [need](int a, std::optional<int> b, std::optional<profile_join> f) {
                                     if (!is_c(f)) return true;  // item 3
                                     return !(a >= 1 && *b >= 1 && a + *b == need);  // item 2
                                 }));
                        link_pair_stripes(u, exy, e);
                        link_outside(u, {x, y});
                    }
                    defer_partners(vx, {y}, {vy});
                    defer_partners(vy, {x}, {vx});
                }
                // Type IIb.
                const std::string tag = ":IIb:" + std::to_string(x) + "-" + std::to_string(y) + ":" + edge_name(e);
                const vertex bx = add_label_vertex(x, 0, "x" + std::to_string(x) + tag);
                const vertex by = add_label_vertex(y, 0, "x" + std::to_string(y) + tag);
                for (auto [u, self] : {std::pair{bx, x}, std::pair{by, y}}) {
                    for (std::size_t e2 : exy)
                        if (is_spot(e2)) link_all(u, spot_where(e2, self, true, true, true, false));
                    link_all(u, stripe_where(e, self, [](int a, std::optional<int> b, std::optional<profile_join>) {
                                 return !(a == -1 && *b == -1);
                             }));
                    link_pair_stripes(u, exy, e);
                    link_outside(u, {x, y});
                }
                defer_partners(bx, {y}, {by});
                defer_partners(by, {x}, {bx});
            }
        }
        // Type III: triples with a spot on every pair and at least h spots in total.
        std::vector<int> labels = ss_.vertices;
        std::sort(labels.begin(), labels.end());
        auto spots_on = [&](int a, int b) {
            int n = 0;
            for (std::size_t e : edges_on_pair(a, b)) n += is_spot(e) ? 1 : 0;
            return n;
        };
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = a + 1; b < labels.size(); ++b)
                for (std::size_t c = b + 1; c < labels.size(); ++c) {
                    const int w = labels[a], x = labels[b], y = labels[c];
                    const int swx = spots_on(w, x), swy = spots_on(w, y), sxy = spots_on(x, y);
                    if (swx == 0 || swy == 0 || sxy == 0 || swx + swy + sxy < hh_) continue;
                    const std::string tag = ":III:" + std::to_string(w) + "-" + std::to_string(x) + "-" + std::to_string(y);
                    const std::vector<int> trio{w, x, y};
                    std::vector<vertex> vs;
                    for (int t : trio) vs.push_back(add_label_vertex(t, t == w ? 1 : 0, "x" + std::to_string(t) + tag));
                    std::vector<std::size_t> inside;
                    for (auto [p, q] : {std::pair{w, x}, std::pair{w, y}, std::pair{x, y}})
                        for (std::size_t e : edges_on_pair(p, q)) inside.push_back(e);
                    for (std::size_t t = 0; t < 3; ++t) {
                        const vertex u = vs[t];
                        for (std::size_t e : inside)
                            if (is_spot(e)) link_all(u, spot_where(e, ss_.edges[e].members[0], true, true, false, true));
                        link_pair_stripes(u, inside, std::nullopt);
                        link_outside(u, trio);
                        std::vector<int> others;
                        std::vector<vertex> partners;
                        for (std::size_t o = 0; o < 3; ++o)
                            if (o != t) {
                                others.push_back(trio[o]);
                                partners.push_back(vs[o]);
                            }
                        defer_partners(u, others, partners);
                    }
                }
    }

    const graph& g_;
    const strip_structure& ss_;
    const pattern& h_;
    int k_;
    int hh_;
    wis_instance out_;
    std::vector<edge_clique> cliques_;
    std::map<int, std::vector<vertex>> label_clique_;
    std::map<int, int> label_clique_ids_;
    std::map<int, std::vector<vertex>> clique_members_;
    int next_clique_ = 0;
    std::set<std::pair<vertex, vertex>> links_;
    std::vector<std::pair<vertex, std::function<void(vertex)>>> partner_rules_;
};

}  // namespace

wis_instance build_wis_instance(const graph& g, const strip_structure& ss, const pattern& h, int k) {
    return wis_builder(g, ss, h, k).build();
}

std::int64_t wis_size_ceiling(const strip_structure& ss, int h) {
    std::int64_t total = 0;
    const std::int64_t per_stripe = 2LL * (h + 1) * (h + 1);
    for (const auto& e : ss.edges) total += e.members.empty() ? 1 : std::max<std::int64_t>(per_stripe, 4);
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : ss.edges)
        if (e.members.size() == 2) pairs.insert({std::min(e.members[0], e.members[1]), std::max(e.members[0], e.members[1])});
    for (int x : ss.vertices) {
        const std::int64_t ex = static_cast<std::int64_t>(ss.edges_at(x).size());
        std::int64_t power = 1;
        for (int i = 0; i < h; ++i) power *= std::max<std::int64_t>(ex, 1);
        total += (std::int64_t{1} << h) * power + 1 + ex;
    }
    for (const auto& [x, y] : pairs) {
        std::int64_t exy = 0;
        for (const auto& e : ss.edges)
            if (e.members.size() == 2 && contains(e.members, x) && contains(e.members, y)) ++exy;
        total += 4 * exy;
    }
    const auto n = static_cast<std::int64_t>(ss.vertices.size());
    total += 3 * (n * (n - 1) * (n - 2) / 6);
    return total;
}

kernel_result kernelize(const graph& g, const pattern& h, int k, structure_provider provider,
                        const strip_structure* manual) {
    kernel_result out;
    if (h.h() == 1) {
        if (!h.is_complete()) throw input_error("kernelization requires a complete pattern");
        if (k < 0) throw input_error("k must be nonnegative");
        out.bound.k = k;
        const bool yes = brute_force_mis_bounded(g, k).size >= k;
        out.bound.status = yes ? bound_status::decided_yes : bound_status::decided_no;
        out.bound.detail = "single-vertex pattern decided by independent set";
        out.wis = trivial_wis(yes);
        return out;
    }
    out.bound = bound_strip_graph(g, h, k, provider, manual);
    switch (out.bound.status) {
        case bound_status::decided_yes: out.wis = trivial_wis(true); break;
        case bound_status::decided_no: out.wis = trivial_wis(false); break;
        case bound_status::reduced:
            out.wis = build_wis_instance(out.bound.reduced.g, *out.bound.ss, h, out.bound.k);
            break;
        case bound_status::partial: break;
    }
    return out;
}

}  // namespace igm
