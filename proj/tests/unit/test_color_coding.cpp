#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "../support.hpp"
#include "igm/color_coding.hpp"
#include "igm/errors.hpp"
#include "igm/oracles.hpp"

using namespace igm;
using namespace igm::testing;

namespace {

const pattern k1{shapes::complete(1)};
const pattern k2{shapes::complete(2)};
const pattern k3{shapes::complete(3)};
const pattern p3{shapes::path(3)};

base make_base(int h, int k, int vertices, std::vector<base_edge> edges, std::vector<int> token_edge,
               std::vector<token_slot> places) {
    base b;
    b.tokens = {h, k};
    b.vertex_count = vertices;
    b.edges = std::move(edges);
    b.token_edge = std::move(token_edge);
    b.token_place = std::move(places);
    return b;
}

constexpr token_slot interior{slot_kind::interior, 0};
constexpr token_slot spot_slot{slot_kind::spot, 0};
constexpr token_slot at(int member) { return {slot_kind::boundary, member}; }

// Isomorphism key computed by trying every vertex relabelling. Edges are compared
// as unordered sets of (member, boundary tokens), so no orientation is chosen.
std::vector<int> oracle_key(const base& b) {
    std::vector<int> perm(b.vertex_count);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<std::vector<int>> descs;
        for (std::size_t f = 0; f < b.edges.size(); ++f) {
            const auto& e = b.edges[f];
            std::vector<std::vector<int>> ends;
            std::vector<int> inner;
            for (std::size_t m = 0; m < e.members.size(); ++m) {
                std::vector<int> end{perm[e.members[m]]};
                for (std::size_t t = 0; t < b.token_edge.size(); ++t)
                    if (b.token_edge[t] == static_cast<int>(f) && b.token_place[t].kind == slot_kind::boundary &&
                        b.token_place[t].member == static_cast<int>(m))
                        end.push_back(static_cast<int>(t));
                ends.push_back(end);
            }
            for (std::size_t t = 0; t < b.token_edge.size(); ++t)
                if (b.token_edge[t] == static_cast<int>(f) && b.token_place[t].kind != slot_kind::boundary)
                    inner.push_back(static_cast<int>(t));
            std::sort(ends.begin(), ends.end());
            std::vector<int> d{e.spot ? 1 : 0, static_cast<int>(e.members.size())};
            for (const auto& end : ends) {
                d.push_back(-1);
                d.insert(d.end(), end.begin(), end.end());
            }
            d.push_back(-2);
            d.insert(d.end(), inner.begin(), inner.end());
            descs.push_back(d);
        }
        std::sort(descs.begin(), descs.end());
        std::vector<int> key;
        for (const auto& d : descs) {
            key.push_back(-3);
            key.insert(key.end(), d.begin(), d.end());
        }
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool all_vertices_used(const base& b) {
    std::vector<char> used(b.vertex_count, 0);
    for (const auto& e : b.edges)
        for (int m : e.members) used[m] = 1;
    return std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
}

// Every raw base with up to `tokens` edges and 2 * edges vertices, quotiented by oracle_key.
std::set<std::vector<int>> raw_classes(int h, int k) {
    const int total = h * k;
    std::set<std::vector<int>> out;
    for (int edges = 1; edges <= total; ++edges)
        for (int vertices = 1; vertices <= 2 * edges; ++vertices) {
            std::vector<base_edge> shapes;
            for (int x = 0; x < vertices; ++x) shapes.push_back({false, {x}});
            for (int x = 0; x < vertices; ++x)
                for (int y = 0; y < vertices; ++y)
                    if (x != y) {
                        shapes.push_back({false, {x, y}});
                        shapes.push_back({true, {x, y}});
                    }
            std::vector<int> pick(edges, 0);
            for (;;) {
                base b = make_base(h, k, vertices, {}, {}, {});
                for (int p : pick) b.edges.push_back(shapes[p]);
                if (all_vertices_used(b)) {
                    std::vector<std::pair<int, token_slot>> choices;
                    for (int f = 0; f < edges; ++f) {
                        if (b.edges[f].spot) {
                            choices.push_back({f, spot_slot});
                            continue;
                        }
                        choices.push_back({f, interior});
                        for (int m = 0; m < static_cast<int>(b.edges[f].members.size()); ++m)
                            choices.push_back({f, at(m)});
                    }
                    std::vector<int> tok(total, 0);
                    for (;;) {
                        b.token_edge.clear();
                        b.token_place.clear();
                        for (int c : tok) {
                            b.token_edge.push_back(choices[c].first);
                            b.token_place.push_back(choices[c].second);
                        }
                        if (is_well_formed(b)) out.insert(oracle_key(b));
                        int i = 0;
                        while (i < total && ++tok[i] == static_cast<int>(choices.size())) tok[i++] = 0;
                        if (i == total) break;
                    }
                }
                int i = 0;
                while (i < edges && ++pick[i] == static_cast<int>(shapes.size())) pick[i++] = 0;
                if (i == edges) break;
            }
        }
    return out;
}

std::vector<base> all_bases(int h, int k) {
    std::vector<base> out;
    enumerate_bases(h, k, [&](const base& b) {
        out.push_back(b);
        return false;
    });
    return out;
}

// Random relabelling, edge reordering and member flips of a base.
base scramble(const base& b, rng_t& rng) {
    base c = b;
    std::vector<int> perm(b.vertex_count);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> order(b.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> where(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = static_cast<int>(i);
        c.edges[i] = b.edges[order[i]];
        for (int& m : c.edges[i].members) m = perm[m];
    }
    std::vector<char> flip(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i)
        if (c.edges[i].members.size() == 2 && uniform(rng, 0, 1) == 1) {
            flip[i] = 1;
            std::swap(c.edges[i].members[0], c.edges[i].members[1]);
        }
    for (std::size_t t = 0; t < c.token_edge.size(); ++t) {
        c.token_edge[t] = where[b.token_edge[t]];
        if (flip[c.token_edge[t]] && c.token_place[t].kind == slot_kind::boundary)
            c.token_place[t].member = 1 - c.token_place[t].member;
    }
    return c;
}

std::size_t find_element(const std::vector<element>& els, element_kind kind, int label, std::size_t edge,
                         int member) {
    for (std::size_t i = 0; i < els.size(); ++i) {
        const element& x = els[i];
        if (x.kind != kind) continue;
        if (kind == element_kind::vertex ? x.label == label : (x.edge == edge && x.member == member)) return i;
    }
    FAIL("element not found");
    return 0;
}

// A single-member stripe on a path of six hosts whose first host is the boundary.
strip_edge path_stripe() {
    strip_edge e;
    e.id = 0;
    e.members = {0};
    e.s.j = shapes::path(6);
    graph j(7);
    for (const auto& [u, v] : e.s.j.edges()) j.add_edge(u, v);
    j.add_edge(6, 0);
    e.s.j = j;
    for (vertex v = 0; v < 6; ++v) e.s.nodes.push_back({strip_node_kind::host, v});
    e.s.nodes.push_back({strip_node_kind::marker, 0});
    return e;
}

bool oracle_yes(const graph& g, const pattern& h, int k) { return brute_force_igm(g, h, k).has_value(); }

claw_free_options pipeline_only(coloring_mode mode = coloring_mode::exhaustive) {
    claw_free_options o;
    o.mode = mode;
    o.force_pipeline = true;
    return o;
}

}  // namespace

TEST_CASE("condition 1") {
    SUBCASE("both tokens in one interior") {
        const base b = make_base(2, 1, 1, {{false, {0}}}, {0, 0}, {interior, interior});
        CHECK(check_condition1(b, k2));
    }
    SUBCASE("tokens on disjoint edges") {
        const base b = make_base(2, 1, 2, {{false, {0}}, {false, {1}}}, {0, 1}, {interior, interior});
        CHECK_FALSE(check_condition1(b, k2));
    }
    SUBCASE("tokens in the boundaries of a shared endpoint") {
        const base b = make_base(2, 1, 3, {{false, {0, 1}}, {false, {0, 2}}}, {0, 1}, {at(0), at(0)});
        CHECK(check_condition1(b, k2));
    }
    SUBCASE("shared endpoint but one token off its boundary") {
        const base b = make_base(2, 1, 3, {{false, {0, 1}}, {false, {0, 2}}}, {0, 1}, {at(0), at(1)});
        CHECK_FALSE(check_condition1(b, k2));
    }
    SUBCASE("a spot touches both of its ends") {
        const base b = make_base(2, 1, 3, {{true, {0, 1}}, {false, {1, 2}}}, {0, 1}, {spot_slot, at(0)});
        CHECK(check_condition1(b, k2));
    }
}

TEST_CASE("condition 2") {
    SUBCASE("two groups at one vertex") {
        const base b = make_base(2, 2, 2, {{false, {0}}, {false, {0, 1}}}, {0, 0, 1, 1},
                                 {at(0), interior, at(0), interior});
        CHECK_FALSE(check_condition2(b, k2));
    }
    SUBCASE("one group, adjacent pattern vertices") {
        const base b = make_base(3, 1, 2, {{false, {0}}, {false, {0, 1}}}, {0, 1, 1}, {at(0), at(0), interior});
        CHECK(check_condition2(b, k3));
    }
    SUBCASE("one group, the two ends of a path") {
        const base b = make_base(3, 1, 2, {{false, {0}}, {false, {0, 1}}}, {0, 1, 1}, {at(0), interior, at(0)});
        CHECK_FALSE(check_condition2(b, p3));
    }
}

TEST_CASE("base enumeration matches an independent enumerator") {
    CHECK(count_bases(1, 1) == 5);
    for (auto [h, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
        CAPTURE(h);
        CAPTURE(k);
        const auto bases = all_bases(h, k);
        std::set<std::vector<int>> keys;
        for (const auto& b : bases) keys.insert(oracle_key(b));
        CHECK(keys.size() == bases.size());
        CHECK(keys == raw_classes(h, k));
    }
}

TEST_CASE("enumerated bases are well-formed, distinct and closed under isomorphism") {
    rng_t rng(7);
    for (auto [h, k] : std::vector<std::pair<int, int>>{{3, 1}, {1, 3}, {2, 2}}) {
        CAPTURE(h);
        CAPTURE(k);
        const auto bases = all_bases(h, k);
        std::set<std::vector<int>> forms;
        for (const auto& b : bases) {
            CHECK(is_well_formed(b));
            CHECK(static_cast<int>(b.token_edge.size()) == h * k);
            CHECK(palette(b).size <= 5 * h * k);
            CHECK(canonical_form(b) == canonical_form(scramble(b, rng)));
            forms.insert(canonical_form(b));
        }
        CHECK(forms.size() == bases.size());
        if (h * k <= 3) {
            std::set<std::vector<int>> keys;
            for (const auto& b : bases) keys.insert(oracle_key(b));
            CHECK(keys.size() == bases.size());
        }
    }
}

TEST_CASE("enumeration stops when asked") {
    int seen = 0;
    enumerate_bases(2, 1, [&](const base&) { return ++seen == 3; });
    CHECK(seen == 3);
    CHECK_THROWS_AS(enumerate_bases(0, 1, [](const base&) { return false; }), input_error);
}

TEST_CASE("palette and color sequences") {
    const base b = make_base(2, 1, 3, {{true, {0, 1}}, {false, {1, 2}}}, {0, 1}, {spot_slot, at(0)});
    const palette pal(b);
    CHECK(pal.size == 3 + 1 + 3);
    CHECK(pal.sequence(b, 0) == std::vector<int>{0, 3, 1});
    CHECK(pal.sequence(b, 1) == std::vector<int>{1, 5, 4, 6, 2});
}

TEST_CASE("blanking") {
    const strip_structure ss = figure_structure();
    const auto els = elements_of(ss);
    // One stripe edge on two base vertices, tokens of K2 on both boundaries.
    const base b = make_base(2, 1, 2, {{false, {0, 1}}}, {0, 0}, {at(0), at(1)});
    const palette pal(b);
    const std::size_t stripe = 7;  // members {0, 1}
    element_coloring natural(els.size(), pal.vertex_color[0]);
    for (std::size_t i = 0; i < els.size(); ++i)
        if (els[i].kind == element_kind::vertex) natural[i] = pal.interior_color[0];
    natural[find_element(els, element_kind::vertex, 0, 0, 0)] = pal.vertex_color[0];
    natural[find_element(els, element_kind::vertex, 1, 0, 0)] = pal.vertex_color[1];
    natural[find_element(els, element_kind::interior, 0, stripe, 0)] = pal.interior_color[0];
    natural[find_element(els, element_kind::boundary, 0, stripe, 0)] = pal.boundary_color[0][0];
    natural[find_element(els, element_kind::boundary, 0, stripe, 1)] = pal.boundary_color[0][1];

    SUBCASE("natural coloring gives an incidence-preserving surjection") {
        const auto r = blank(natural, ss, els, b, pal);
        REQUIRE(r.has_value());
        CHECK(r->delta.vertex == std::map<int, int>{{0, 0}, {1, 1}});
        REQUIRE(r->delta.edge.size() == 1);
        const edge_image img = r->delta.edge.at(stripe);
        CHECK(img.base_edge == 0);
        CHECK_FALSE(img.reversed);
        for (std::size_t m = 0; m < 2; ++m)
            CHECK(r->delta.vertex.at(ss.edges[stripe].members[m]) == b.edges[0].members[img.reversed ? 1 - m : m]);
    }
    SUBCASE("reversed orientation") {
        element_coloring f = natural;
        f[find_element(els, element_kind::vertex, 0, 0, 0)] = pal.vertex_color[1];
        f[find_element(els, element_kind::vertex, 1, 0, 0)] = pal.vertex_color[0];
        f[find_element(els, element_kind::boundary, 0, stripe, 0)] = pal.boundary_color[0][1];
        f[find_element(els, element_kind::boundary, 0, stripe, 1)] = pal.boundary_color[0][0];
        const auto r = blank(f, ss, els, b, pal);
        REQUIRE(r.has_value());
        CHECK(r->delta.edge.at(stripe).reversed);
    }
    SUBCASE("one vertex color everywhere") {
        const element_coloring f(els.size(), pal.vertex_color[0]);
        CHECK_FALSE(blank(f, ss, els, b, pal).has_value());
        const auto after = apply_blanking(f, ss, els, b, pal);
        for (std::size_t i = 0; i < els.size(); ++i)
            if (els[i].kind != element_kind::vertex) CHECK(after[i] == blank_color);
    }
    SUBCASE("boundary and interior colors swapped") {
        element_coloring f = natural;
        std::swap(f[find_element(els, element_kind::interior, 0, stripe, 0)],
                  f[find_element(els, element_kind::boundary, 0, stripe, 0)]);
        const auto after = apply_blanking(f, ss, els, b, pal);
        CHECK(after[find_element(els, element_kind::interior, 0, stripe, 0)] == blank_color);
        CHECK(after[find_element(els, element_kind::boundary, 0, stripe, 1)] == blank_color);
        CHECK_FALSE(blank(f, ss, els, b, pal).has_value());
    }
    SUBCASE("idempotent") {
        rng_t rng(3);
        const auto bases = all_bases(2, 1);
        for (int round = 0; round < 300; ++round) {
            const base& bb = bases[uniform(rng, 0, static_cast<int>(bases.size()) - 1)];
            const palette pp(bb);
            element_coloring f(els.size());
            for (int& c : f) c = uniform(rng, 0, pp.size - 1);
            const auto once = apply_blanking(f, ss, els, bb, pp);
            CHECK(apply_blanking(once, ss, els, bb, pp) == once);
        }
    }
}

TEST_CASE("strip realizations") {
    const strip_edge e = path_stripe();
    const token_set ts{2, 1};
    SUBCASE("no tokens: best interior matching") {
        const auto r = best_realization(e, k2, ts, {});
        REQUIRE(r.has_value());
        CHECK(r->realized.empty());
        CHECK(r->interior.size() == 2);
    }
    SUBCASE("one boundary and one interior token") {
        const auto r = best_realization(e, k2, ts, {{0, at(0)}, {1, interior}});
        REQUIRE(r.has_value());
        REQUIRE(r->realized.size() == 2);
        CHECK(r->realized[0].host == 0);
        CHECK(r->realized[1].host == 1);
        CHECK(r->interior.size() == 1);
    }
    SUBCASE("two boundary tokens in a boundary of one vertex") {
        CHECK_FALSE(best_realization(e, k2, ts, {{0, at(0)}, {1, at(0)}}).has_value());
    }
    SUBCASE("values match all realizations by brute force") {
        // For each host pair (x, y) with x in the boundary, y adjacent: the rest.
        const graph path = shapes::path(6);
        int best = -1;
        for (vertex y : path.neighbors(0)) {
            vertex_list rest;
            for (vertex v = 0; v < 6; ++v)
                if (v != 0 && v != y && !path.adjacent(v, 0) && !path.adjacent(v, y)) rest.push_back(v);
            best = std::max(best, brute_force_max_igm(path.induced(rest), k2).size());
        }
        const auto r = best_realization(e, k2, ts, {{0, at(0)}, {1, interior}});
        REQUIRE(r.has_value());
        CHECK(static_cast<int>(r->interior.size()) == best);
    }
}

TEST_CASE("global matching step") {
    const graph g = shapes::path(3);
    const token_set ts{2, 1};
    SUBCASE("interior occurrences already reach k") {
        strip_realization part;
        part.interior.push_back({{0, 1}});
        const std::vector<const strip_realization*> parts{&part};
        const auto w = global_matching_step(g, k2, 1, ts, parts);
        REQUIRE(w.has_value());
        CHECK(w->size() == 1);
    }
    SUBCASE("a fully realized group gives one occurrence") {
        strip_realization part;
        part.realized = {{1, 0}, {2, 1}};
        const std::vector<const strip_realization*> parts{&part};
        const auto w = global_matching_step(g, k2, 1, ts, parts);
        REQUIRE(w.has_value());
        CHECK(is_valid_matching(g, k2, *w));
    }
    SUBCASE("a group missing a vertex gives nothing") {
        strip_realization part;
        part.realized = {{1, 0}};
        const std::vector<const strip_realization*> parts{&part};
        CHECK_FALSE(global_matching_step(g, k2, 1, ts, parts).has_value());
    }
    SUBCASE("k = 0 is vacuous") {
        const std::vector<const strip_realization*> parts;
        const auto w = global_matching_step(g, k2, 0, token_set{2, 0}, parts);
        REQUIRE(w.has_value());
        CHECK(w->size() == 0);
    }
}

TEST_CASE("claw-free driver examples") {
    const graph two_triangles = shapes::disjoint_union(shapes::complete(3), shapes::complete(3));
    const auto r = solve_igm_claw_free(two_triangles, k3, 2, structure_source::line_graph, nullptr, nullptr);
    CHECK(r.answer == answer_kind::yes);
    CHECK(is_valid_matching(two_triangles, k3, r.witness));
    const auto forced =
        solve_igm_claw_free(two_triangles, k3, 2, structure_source::trivial, nullptr, nullptr, pipeline_only());
    CHECK(forced.answer == answer_kind::yes);
    CHECK(forced.witness.size() == 2);

    CHECK_THROWS_AS(solve_igm_claw_free(shapes::star(3), k2, 1, structure_source::trivial, nullptr, nullptr),
                    input_error);
    CHECK_THROWS_AS(solve_igm_claw_free(shapes::path(3), pattern(shapes::empty(2)), 1, structure_source::trivial,
                                        nullptr, nullptr),
                    input_error);
    CHECK_THROWS_AS(solve_igm_claw_free(shapes::path(3), k2, -1, structure_source::trivial, nullptr, nullptr),
                    input_error);
    claw_free_options small_cap = pipeline_only();
    small_cap.token_cap = 3;
    CHECK_THROWS_AS(run_pipeline(shapes::path(8), *line_graph_strip_structure(shapes::path(8)), k2, 2, small_cap),
                    size_limit_error);
    // Not a line graph: a 5-wheel is claw-free but needs a structure.
    graph wheel = shapes::cycle(5);
    graph w6(6);
    for (const auto& [u, v] : wheel.edges()) w6.add_edge(u, v);
    for (vertex v = 0; v < 5; ++v) w6.add_edge(5, v);
    CHECK_THROWS_AS(
        solve_igm_claw_free(w6, k2, 1, structure_source::line_graph, nullptr, nullptr, pipeline_only()),
        input_error);
}

TEST_CASE("pipeline agrees with brute force on the illustrated structure") {
    const graph g = figure_graph();
    const strip_structure ss = figure_structure();
    for (const pattern* h : {&k1, &k2, &p3, &k3})
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(h->h());
            CAPTURE(k);
            const auto r = solve_igm_claw_free(g, *h, k, structure_source::given, &ss, nullptr, pipeline_only());
            CHECK((r.answer == answer_kind::yes) == oracle_yes(g, *h, k));
            if (r.answer == answer_kind::yes) CHECK(is_valid_matching(g, *h, r.witness));
        }
}

TEST_CASE("pipeline agrees with brute force on random line graphs") {
    rng_t rng(11);
    const std::vector<const pattern*> hs{&k1, &k2, &p3, &k3};
    for (int round = 0; round < 60; ++round) {
        const graph g = random_line_graph(rng, uniform(rng, 3, 10));
        const pattern& h = *hs[uniform(rng, 0, 3)];
        const int k = uniform(rng, 1, 2);
        CAPTURE(round);
        const auto r = solve_igm_claw_free(g, h, k, structure_source::line_graph, nullptr, nullptr, pipeline_only());
        CHECK((r.answer == answer_kind::yes) == oracle_yes(g, h, k));
        if (r.answer == answer_kind::yes) CHECK(is_valid_matching(g, h, r.witness));
    }
}

TEST_CASE("dispatch agrees with brute force on claw-free graphs") {
    rng_t rng(12);
    const std::vector<const pattern*> hs{&k1, &k2, &p3, &k3};
    int tried = 0;
    while (tried < 60) {
        const graph g = random_graph(rng, uniform(rng, 4, 11), 0.5);
        if (!star_free(g, 3)) continue;
        ++tried;
        const pattern& h = *hs[uniform(rng, 0, 3)];
        const int k = uniform(rng, 1, 2);
        const auto source = line_graph_strip_structure(g) ? structure_source::line_graph : structure_source::trivial;
        const auto r = solve_igm_claw_free(g, h, k, source, nullptr, nullptr);
        CHECK((r.answer == answer_kind::yes) == oracle_yes(g, h, k));
    }
}

TEST_CASE("literal and exhaustive colorings agree") {
    rng_t rng(13);
    for (int round = 0; round < 6; ++round) {
        const graph g = random_line_graph(rng, uniform(rng, 2, 3));
        const strip_structure ss = *line_graph_strip_structure(g);
        for (const pattern* h : {&k1, &k2}) {
            const auto ex = run_pipeline(g, ss, *h, 1, pipeline_only());
            const auto lit = run_pipeline(g, ss, *h, 1, pipeline_only(coloring_mode::literal));
            CHECK(ex.answer == lit.answer);
            CHECK((ex.answer == answer_kind::yes) == oracle_yes(g, *h, 1));
        }
    }
}

TEST_CASE("random colorings are deterministic and one-sided") {
    rng_t rng(14);
    for (int round = 0; round < 8; ++round) {
        const graph g = random_line_graph(rng, uniform(rng, 3, 6));
        const strip_structure ss = *line_graph_strip_structure(g);
        claw_free_options o = pipeline_only(coloring_mode::random);
        o.trials = 200;
        o.seed = 99;
        const auto a = run_pipeline(g, ss, k2, 1, o);
        const auto b = run_pipeline(g, ss, k2, 1, o);
        CHECK(a.answer == b.answer);
        CHECK(a.notes.counters == b.notes.counters);
        if (a.answer == answer_kind::yes) {
            CHECK(is_valid_matching(g, k2, a.witness));
            CHECK(oracle_yes(g, k2, 1));
        } else {
            CHECK(a.answer == answer_kind::unknown);
        }
    }
}

TEST_CASE("accepted global steps keep color classes apart") {
    rng_t rng(15);
    const std::vector<const pattern*> hs{&k1, &k2, &p3, &k3};
    int checked = 0;
    for (int round = 0; round < 80; ++round) {
        const graph g = random_line_graph(rng, uniform(rng, 4, 12));
        const pattern& h = *hs[uniform(rng, 0, 3)];
        const int k = uniform(rng, 1, 2);
        const auto r = solve_igm_claw_free(g, h, k, structure_source::line_graph, nullptr, nullptr, pipeline_only());
        if (r.answer != answer_kind::yes || r.classes.empty()) continue;
        ++checked;
        for (const auto& [u, v] : g.edges()) {
            const int a = r.classes[u], b = r.classes[v];
            if (a != 0 && b != 0) CHECK(a == b);
        }
    }
    CHECK(checked > 0);
}
