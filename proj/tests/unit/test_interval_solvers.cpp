#include <doctest.h>

#include "../support.hpp"
#include "igm/errors.hpp"
#include "igm/interval_solvers.hpp"
#include "igm/oracles.hpp"

using namespace igm;
using namespace igm::testing;

namespace {

const std::vector<pattern>& connected_patterns() {
    static const std::vector<pattern> ps{pattern(shapes::complete(1)), pattern(shapes::complete(2)),
                                         pattern(shapes::path(3)), pattern(shapes::complete(3))};
    return ps;
}

arc_model c6_arcs() {
    arc_model m{12, {}};
    for (int i = 0; i < 6; ++i) m.items.push_back({2 * i, (2 * i + 3) % 12});
    return m;
}

int oracle_max(const graph& g, const pattern& h) { return brute_force_max_igm(g, h).size(); }

}  // namespace

TEST_CASE("interval_wis examples") {
    const std::vector<weighted_interval> three{{0, 2, 3}, {1, 4, 5}, {3, 6, 3}};
    const auto r = interval_wis(three);
    CHECK(r.weight == 6);
    CHECK(r.witness == vertex_list{0, 2});
    const std::vector<weighted_interval> one{{0, 1, 7}};
    CHECK(interval_wis(one).weight == 7);
    const std::vector<weighted_interval> apart{{0, 1, 2}, {2, 3, 4}, {5, 9, 1}};
    CHECK(interval_wis(apart).weight == 7);
    CHECK(interval_wis(apart).cardinality == 3);
}

TEST_CASE("interval_wis matches subset enumeration including tie-breaking") {
    rng_t rng(7);
    for (int round = 0; round < 200; ++round) {
        const int n = uniform(rng, 1, 10);
        std::vector<weighted_interval> items;
        for (int i = 0; i < n; ++i) {
            const coord l = uniform(rng, 0, 15);
            items.push_back({l, l + uniform(rng, 1, 5), uniform(rng, 0, 3)});
        }
        std::int64_t best_w = -1;
        int best_c = -1;
        vertex_list best_set;
        for (unsigned mask = 0; mask < (1U << n); ++mask) {
            vertex_list vs;
            std::int64_t w = 0;
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                if (!(mask >> i & 1U)) continue;
                for (vertex j : vs)
                    if (std::max(items[i].l, items[j].l) <= std::min(items[i].r, items[j].r)) ok = false;
                vs.push_back(i);
                w += items[i].weight;
            }
            if (!ok) continue;
            const int c = static_cast<int>(vs.size());
            if (w > best_w || (w == best_w && c > best_c) || (w == best_w && c == best_c && vs < best_set)) {
                best_w = w;
                best_c = c;
                best_set = vs;
            }
        }
        const auto r = interval_wis(items);
        CHECK(r.weight == best_w);
        CHECK(r.cardinality == best_c);
        CHECK(r.witness == best_set);
    }
}

TEST_CASE("solve_igm_proper_interval examples") {
    const interval_model m{{{0, 2}, {1, 3}, {5, 7}, {6, 8}}};
    const pattern k2(shapes::complete(2));
    auto r = solve_igm_proper_interval(m, k2, 2);
    REQUIRE(r);
    CHECK(r->occurrences[0].vertices == vertex_list{0, 1});
    CHECK(r->occurrences[1].vertices == vertex_list{2, 3});
    CHECK_FALSE(solve_igm_proper_interval(m, k2, 3));
    const pattern split(shapes::disjoint_union(shapes::complete(1), shapes::complete(1)));
    CHECK_THROWS_AS(solve_igm_proper_interval(m, split, 1), input_error);
    CHECK_THROWS_AS(solve_igm_proper_interval(interval_model{{{0, 5}, {1, 2}}}, k2, 1), input_error);
}

TEST_CASE("auxiliary interval optimum equals the oracle") {
    rng_t rng(13);
    for (int round = 0; round < 150; ++round) {
        const interval_model m = random_proper_intervals(rng, uniform(rng, 1, 14));
        const graph g = realize(m);
        for (const pattern& h : connected_patterns()) {
            const matching best = max_igm_interval(m, h);
            CHECK(is_valid_matching(g, h, best));
            CHECK(best.size() == oracle_max(g, h));
        }
    }
}

TEST_CASE("solve_isi_long_proper_ca examples") {
    const arc_model c6 = c6_arcs();
    REQUIRE(validate(c6).long_arcs);
    REQUIRE(validate(c6).proper);
    const arc_model p3{12, {{0, 3}, {2, 5}, {4, 7}}};
    const arc_model k3{12, {{0, 3}, {1, 4}, {2, 5}}};
    auto hit = solve_isi_long_proper_ca(c6, p3);
    REQUIRE(hit);
    CHECK(is_occurrence(realize(c6), pattern(realize(p3)), *hit));
    CHECK_FALSE(solve_isi_long_proper_ca(c6, k3));
    CHECK(solve_isi_long_proper_ca(c6, c6));
}

TEST_CASE("solve_isi_long_proper_ca agrees with occurrence search") {
    rng_t rng(29);
    const std::vector<arc_model> hs{arc_model{12, {{0, 3}}}, arc_model{12, {{0, 3}, {2, 5}}},
                                    arc_model{12, {{0, 3}, {2, 5}, {4, 7}}},
                                    arc_model{12, {{0, 3}, {1, 4}, {2, 5}}},
                                    arc_model{12, {{0, 3}, {2, 5}, {4, 7}, {6, 9}}}};
    for (int round = 0; round < 120; ++round) {
        const arc_model m = random_long_proper_arcs(rng, uniform(rng, 1, 9));
        CHECK(solve_isi_long_proper_ca(m, m));
        const graph g = realize(m);
        for (const arc_model& hm : hs) {
            const pattern h(realize(hm));
            const bool expect = !enumerate_occurrences(g, h).empty();
            auto got = solve_isi_long_proper_ca(m, hm);
            CHECK(got.has_value() == expect);
            if (got) CHECK(is_occurrence(g, h, *got));
        }
        const arc_model hm = random_long_proper_arcs(rng, uniform(rng, 1, 4));
        const pattern h(realize(hm));
        auto got = solve_isi_long_proper_ca(m, hm);
        CHECK(got.has_value() == !enumerate_occurrences(g, h).empty());
        if (got) CHECK(is_occurrence(g, h, *got));
    }
}

TEST_CASE("solve_igm_long_proper_ca examples") {
    const pattern k2(shapes::complete(2));
    const arc_model clusters{20, {{0, 2}, {1, 3}, {10, 12}, {11, 13}}};
    CHECK(solve_igm_long_proper_ca(clusters, k2, nullptr, 2));
    const arc_model c6 = c6_arcs();
    auto two = solve_igm_long_proper_ca(c6, k2, nullptr, 2);
    REQUIRE(two);
    CHECK(is_valid_matching(realize(c6), k2, *two));
    CHECK_FALSE(solve_igm_long_proper_ca(c6, k2, nullptr, 3));
}

TEST_CASE("long proper solver equals the oracle, cut completeness above one") {
    rng_t rng(41);
    const arc_model k2_model{12, {{0, 3}, {2, 5}}};
    for (int round = 0; round < 80; ++round) {
        const arc_model m = random_long_proper_arcs(rng, uniform(rng, 1, 12));
        const graph g = realize(m);
        for (const pattern& h : connected_patterns()) {
            const int opt = oracle_max(g, h);
            for (int k = 1; k <= 3; ++k) {
                run_notes notes;
                auto r = solve_igm_long_proper_ca(m, h, nullptr, k, &notes);
                CHECK(r.has_value() == (opt >= k));
                if (r) CHECK(is_valid_matching(g, h, *r));
            }
            if (opt >= 2) {
                int best = 0;
                for (circle_point p : equivalence_points(m))
                    best = std::max(best, max_igm_interval(cut_at_point(m, p).intervals, h).size());
                CHECK(best == opt);
            }
        }
        const pattern k2(shapes::complete(2));
        auto r = solve_igm_long_proper_ca(m, k2, &k2_model, 1);
        CHECK(r.has_value() == (oracle_max(g, k2) >= 1));
    }
}

TEST_CASE("solve_igm_proper_ca_disconnected examples and oracle") {
    const pattern two_k1(shapes::empty(2));
    const arc_model apart{16, {{0, 2}, {4, 6}, {8, 10}, {12, 14}}};
    auto r = solve_igm_proper_ca_disconnected(apart, two_k1, 2);
    REQUIRE(r);
    CHECK(is_valid_matching(realize(apart), two_k1, *r));
    const arc_model clique{12, {{0, 6}, {1, 7}, {2, 8}, {3, 9}}};
    CHECK_FALSE(solve_igm_proper_ca_disconnected(clique, two_k1, 1));
    CHECK_THROWS_AS(solve_igm_proper_ca_disconnected(apart, two_k1, 5), size_limit_error);
    CHECK_THROWS_AS(solve_igm_proper_ca_disconnected(apart, pattern(shapes::complete(2)), 1), input_error);

    rng_t rng(43);
    const pattern k1k2(shapes::disjoint_union(shapes::complete(1), shapes::complete(2)));
    int done = 0;
    while (done < 80) {
        const arc_model m = random_arcs(rng, uniform(rng, 1, 10), uniform(rng, 8, 30), 8);
        if (!validate(m).proper) continue;
        ++done;
        const graph g = realize(m);
        const int opt = oracle_max(g, k1k2);
        for (int k = 1; k <= 2; ++k) {
            auto got = solve_igm_proper_ca_disconnected(m, k1k2, k);
            CHECK(got.has_value() == (opt >= k));
            if (got) CHECK(is_valid_matching(g, k1k2, *got));
        }
    }
}
