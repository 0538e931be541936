#include <doctest.h>

#include "../support.hpp"
#include "igm/errors.hpp"
#include "igm/models.hpp"
#include "igm/oracles.hpp"

using namespace igm;
using namespace igm::testing;

namespace {

arc_model arcs(coord c, std::initializer_list<arc> items) { return arc_model{c, items}; }

// Union coverage by sampling every equivalence representative.
bool covers_by_sampling(const arc_model& m, const vertex_list& which) {
    for (circle_point p : equivalence_points(m)) {
        bool hit = false;
        for (vertex a : which) hit = hit || arc_contains(m, a, p);
        if (!hit) return false;
    }
    return true;
}

graph remove_vertex(const graph& g, vertex x) {
    vertex_list keep;
    for (vertex v = 0; v < g.n(); ++v)
        if (v != x) keep.push_back(v);
    return g.induced(keep);
}

}  // namespace

TEST_CASE("realize intervals and arcs") {
    const graph g = realize(interval_model{{{0, 2}, {1, 3}, {4, 6}}});
    CHECK(g == make_graph(3, {{0, 1}}));
    CHECK(realize(arcs(12, {{0, 5}, {4, 9}, {8, 1}})) == shapes::complete(3));
    CHECK_THROWS_AS(realize(interval_model{{{2, 2}}}), input_error);
    CHECK_THROWS_AS(realize(arcs(8, {{3, 3}})), input_error);
    CHECK_THROWS_AS(realize(arcs(8, {{0, 8}})), input_error);
}

TEST_CASE("fuzzy resolutions decide one-point contacts") {
    fuzzy_arc_model f{arcs(8, {{0, 2}, {2, 4}}), {{{0, 1}, false}}};
    CHECK(realize(f) == shapes::empty(2));
    f.resolutions[{0, 1}] = true;
    CHECK(realize(f) == shapes::complete(2));
    fuzzy_arc_model missing{arcs(8, {{0, 2}, {2, 4}}), {}};
    CHECK_THROWS_WITH_AS(realize(missing), doctest::Contains("(0, 1)"), input_error);
    fuzzy_arc_model extra{arcs(8, {{0, 3}, {2, 4}}), {{{0, 1}, true}}};
    CHECK_THROWS_AS(realize(extra), input_error);
}

TEST_CASE("arc overlap kinds") {
    const arc_model m = arcs(8, {{0, 4}, {4, 0}, {1, 3}, {4, 6}});
    CHECK(arc_overlap(m, 0, 1) == overlap::more);  // touch at both ends
    CHECK(arc_overlap(m, 0, 3) == overlap::single_point);
    CHECK(arc_overlap(m, 2, 3) == overlap::none);
}

TEST_CASE("validate flags") {
    const auto cover3 = validate(arcs(12, {{0, 5}, {4, 9}, {8, 1}}));
    CHECK_FALSE(cover3.long_arcs);
    CHECK(cover3.covers_circle);
    const auto spread = validate(arcs(12, {{0, 3}, {2, 5}, {6, 9}}));
    CHECK(spread.proper);
    CHECK(spread.strict);
    CHECK(spread.long_arcs);
    CHECK_FALSE(spread.covers_circle);
    CHECK_FALSE(validate(arcs(12, {{0, 4}, {1, 3}})).proper);

    const auto twins = validate(arcs(12, {{0, 4}, {0, 4}, {6, 8}}));
    CHECK_FALSE(twins.proper);
    CHECK(twins.almost_proper);
    CHECK_FALSE(twins.strict);
    CHECK(twins.almost_strict);
    CHECK_FALSE(validate(arcs(12, {{0, 4}, {0, 4}, {4, 8}, {9, 0}})).almost_strict);
    CHECK(validate(arcs(12, {{0, 4}, {4, 8}, {8, 0}})).almost_strict);
}

TEST_CASE("flag implications and long check against point sampling") {
    rng_t rng(4);
    for (int round = 0; round < 300; ++round) {
        const int n = uniform(rng, 1, 8);
        const arc_model m = random_arcs(rng, n, uniform(rng, 4, 20), 8);
        const model_report r = validate(m);
        if (r.proper) CHECK(r.almost_proper);
        if (r.strict) CHECK(r.almost_strict);
        bool any_cover = false;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k) any_cover = any_cover || covers_by_sampling(m, {i, j, k});
        CHECK(r.long_arcs == !any_cover);
        vertex_list all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        CHECK(r.covers_circle == covers_by_sampling(m, all));
    }
}

TEST_CASE("equivalence points") {
    const auto one = equivalence_points(arcs(8, {{0, 4}}));
    const std::vector<circle_point> expect{circle_point::at(0), circle_point::at(2), circle_point::at(4),
                                           circle_point::at(6)};
    CHECK(one == expect);
    CHECK(equivalence_points(arcs(8, {})).size() == 1);
    // Four distinct endpoints and one midpoint per circular gap between them.
    CHECK(equivalence_points(arcs(8, {{0, 2}, {4, 6}})).size() == 8);
    const auto odd = equivalence_points(arcs(5, {{0, 1}, {1, 2}}));
    CHECK(std::find(odd.begin(), odd.end(), circle_point{1}) != odd.end());
}

TEST_CASE("cut_at_point") {
    const arc_model m = arcs(12, {{0, 3}, {2, 5}, {6, 9}});
    const auto far = cut_at_point(m, circle_point::at(10));
    CHECK(far.intervals.items.size() == 3);
    CHECK(far.removed.empty());
    const auto mid = cut_at_point(m, circle_point::at(2));
    CHECK(mid.removed == vertex_list{0, 1});
    CHECK(mid.kept == vertex_list{2});
    CHECK(mid.intervals.items.size() == 1);

    rng_t rng(12);
    for (int round = 0; round < 200; ++round) {
        const arc_model a = random_arcs(rng, uniform(rng, 1, 9), uniform(rng, 5, 20), 7);
        const graph g = realize(a);
        for (circle_point p : equivalence_points(a)) {
            const auto cut = cut_at_point(a, p);
            CHECK(realize(cut.intervals) == g.induced(cut.kept));
            if (cut.removed.empty()) CHECK(realize(cut.intervals) == g);
        }
    }
}

TEST_CASE("realize is monotone under deletion") {
    rng_t rng(31);
    for (int round = 0; round < 100; ++round) {
        arc_model a = random_arcs(rng, uniform(rng, 2, 9), uniform(rng, 5, 20), 7);
        const graph g = realize(a);
        const vertex x = uniform(rng, 0, static_cast<int>(a.items.size()) - 1);
        a.items.erase(a.items.begin() + x);
        CHECK(realize(a) == remove_vertex(g, x));
    }
}

TEST_CASE("random proper interval graphs are claw-free") {
    rng_t rng(2);
    for (int round = 0; round < 200; ++round) {
        const interval_model m = random_proper_intervals(rng, uniform(rng, 1, 14));
        CHECK(validate(m).proper);
        CHECK(star_free(realize(m), 3));
    }
}
