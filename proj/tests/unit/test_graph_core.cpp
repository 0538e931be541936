#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "../support.hpp"
#include "igm/embedding.hpp"
#include "igm/errors.hpp"
#include "igm/line_graph.hpp"
#include "igm/oracles.hpp"

using namespace igm;
using namespace igm::testing;

namespace {

// Every h-subset and every bijection onto it.
std::map<vertex_list, vertex_list> naive_occurrences(const graph& g, const graph& h) {
    std::map<vertex_list, vertex_list> out;
    const int n = g.n(), k = h.n();
    std::vector<int> pick(k);
    std::function<void(int, int)> subsets = [&](int from, int depth) {
        if (depth == k) {
            vertex_list perm(pick.begin(), pick.end());
            do {
                bool ok = true;
                for (int i = 0; i < k && ok; ++i)
                    for (int j = i + 1; j < k && ok; ++j) ok = h.adjacent(i, j) == g.adjacent(perm[i], perm[j]);
                if (ok) {
                    vertex_list key(pick.begin(), pick.end());
                    auto it = out.find(key);
                    if (it == out.end() || perm < it->second) out[key] = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        for (int v = from; v < n; ++v) {
            pick[depth] = v;
            subsets(v + 1, depth + 1);
        }
    };
    subsets(0, 0);
    return out;
}

bool naive_wis(const graph& g, const std::vector<std::int64_t>& w, int kc, std::int64_t kw) {
    for (unsigned mask = 0; mask < (1U << g.n()); ++mask) {
        vertex_list vs;
        std::int64_t sum = 0;
        for (int v = 0; v < g.n(); ++v)
            if (mask >> v & 1U) {
                vs.push_back(v);
                sum += w[v];
            }
        if (static_cast<int>(vs.size()) >= kc && sum >= kw && is_independent(g, vs)) return true;
    }
    return false;
}

// Assign each vertex a pair of endpoint labels with new labels introduced in order.
bool naive_is_multigraph_line_graph(const graph& g) {
    const int n = g.n();
    std::vector<std::pair<int, int>> lab(n);
    std::function<bool(int, int)> go = [&](int v, int used) -> bool {
        if (v == n) return true;
        for (int a = 0; a <= used; ++a)
            for (int b = a + 1; b <= used + 1; ++b) {
                bool ok = true;
                for (int u = 0; u < v && ok; ++u) {
                    const bool meet = lab[u].first == a || lab[u].first == b || lab[u].second == a || lab[u].second == b;
                    ok = meet == g.adjacent(u, v);
                }
                if (!ok) continue;
                lab[v] = {a, b};
                if (go(v + 1, std::max(used, b + 1))) return true;
            }
        return false;
    };
    return go(0, 0);
}

}  // namespace

TEST_CASE("star_free recognizes claws and larger stars") {
    CHECK_FALSE(star_free(shapes::star(3), 3));
    CHECK(star_free(shapes::path(3), 3));
    CHECK_FALSE(star_free(shapes::star(4), 4));
    CHECK(star_free(shapes::star(4), 5));
    CHECK_THROWS_AS(star_free(shapes::path(3), 1), input_error);
}

TEST_CASE("brute_force_mis on small named graphs") {
    CHECK(brute_force_mis(shapes::cycle(5)).size == 2);
    CHECK(brute_force_mis(shapes::complete(4)).size == 1);
    auto e5 = brute_force_mis(shapes::empty(5));
    CHECK(e5.size == 5);
    CHECK(is_independent(shapes::empty(5), e5.witness));
    oracle_limits tiny;
    tiny.mis_vertices = 4;
    CHECK_THROWS_AS(brute_force_mis(shapes::cycle(5), tiny), size_limit_error);
}

TEST_CASE("brute_force_mis agrees with subset enumeration") {
    rng_t rng(11);
    for (int round = 0; round < 60; ++round) {
        const graph g = random_graph(rng, uniform(rng, 1, 12), 0.35);
        int best = 0;
        for (unsigned mask = 0; mask < (1U << g.n()); ++mask) {
            vertex_list vs;
            for (int v = 0; v < g.n(); ++v)
                if (mask >> v & 1U) vs.push_back(v);
            if (is_independent(g, vs)) best = std::max(best, static_cast<int>(vs.size()));
        }
        const auto r = brute_force_mis(g);
        CHECK(r.size == best);
        CHECK(is_independent(g, r.witness));
    }
}

TEST_CASE("enumerate_occurrences named examples") {
    const pattern k2(shapes::complete(2)), k3(shapes::complete(3)), p3(shapes::path(3));
    auto occ = enumerate_occurrences(shapes::path(3), k2);
    REQUIRE(occ.size() == 2);
    CHECK(occ[0].vertices == vertex_list{0, 1});
    CHECK(occ[1].vertices == vertex_list{1, 2});
    CHECK(enumerate_occurrences(shapes::complete(4), k3).size() == 4);
    CHECK(enumerate_occurrences(shapes::cycle(5), p3).size() == 5);
}

TEST_CASE("enumerate_occurrences matches the naive double loop") {
    rng_t rng(5);
    const std::vector<graph> patterns{shapes::complete(1), shapes::complete(2), shapes::path(3),
                                      shapes::complete(3), shapes::cycle(4), shapes::star(3),
                                      shapes::disjoint_union(shapes::complete(1), shapes::complete(2))};
    for (int round = 0; round < 40; ++round) {
        const graph g = random_graph(rng, uniform(rng, 1, 10), 0.4);
        for (const graph& hg : patterns) {
            const auto expect = naive_occurrences(g, hg);
            const auto got = enumerate_occurrences(g, pattern(hg));
            REQUIRE(got.size() == expect.size());
            std::size_t i = 0;
            for (const auto& [key, map] : expect) {
                CHECK(got[i].sorted_vertices() == key);
                CHECK(got[i].vertices == map);
                ++i;
            }
        }
    }
}

TEST_CASE("brute_force_igm examples and validity") {
    const pattern k2(shapes::complete(2)), k3(shapes::complete(3));
    auto m = brute_force_igm(shapes::path(5), k2, 2);
    REQUIRE(m);
    CHECK(is_valid_matching(shapes::path(5), k2, *m));
    CHECK_FALSE(brute_force_igm(shapes::complete(4), k3, 2));
    const graph two = shapes::disjoint_union(shapes::complete(3), shapes::complete(3));
    auto t = brute_force_igm(two, k3, 2);
    REQUIRE(t);
    CHECK(is_valid_matching(two, k3, *t));
    CHECK(brute_force_igm(shapes::path(5), k2, 0)->size() == 0);

    rng_t rng(3);
    for (int round = 0; round < 40; ++round) {
        const graph g = random_graph(rng, uniform(rng, 2, 12), 0.3);
        for (int k = 1; k <= 3; ++k)
            if (auto r = brute_force_igm(g, k2, k)) {
                CHECK(r->size() == k);
                CHECK(is_valid_matching(g, k2, *r));
            }
    }
}

TEST_CASE("brute_force_wis examples") {
    const graph k3 = shapes::complete(3);
    const std::vector<std::int64_t> w{5, 1, 1};
    CHECK(brute_force_wis(k3, w, 1, 5).feasible);
    CHECK_FALSE(brute_force_wis(k3, w, 2, 0).feasible);
    const std::vector<std::int64_t> wp{2, 9, 2};
    auto r = brute_force_wis(shapes::path(3), wp, 2, 4);
    CHECK(r.feasible);
    CHECK(r.witness == vertex_list{0, 2});
}

TEST_CASE("brute_force_wis agrees with subset enumeration") {
    rng_t rng(17);
    for (int round = 0; round < 80; ++round) {
        const graph g = random_graph(rng, uniform(rng, 1, 11), 0.35);
        std::vector<std::int64_t> w(g.n());
        for (auto& x : w) x = uniform(rng, 0, 4);
        const int kc = uniform(rng, 0, 4);
        const std::int64_t kw = uniform(rng, 0, 10);
        const auto r = brute_force_wis(g, w, kc, kw);
        CHECK(r.feasible == naive_wis(g, w, kc, kw));
        if (r.feasible) {
            CHECK(is_independent(g, r.witness));
            std::int64_t sum = 0;
            for (vertex v : r.witness) sum += w[v];
            CHECK(sum >= kw);
            CHECK(static_cast<int>(r.witness.size()) >= kc);
        }
    }
}

TEST_CASE("twin_classes") {
    CHECK(twin_classes(shapes::complete(4)).size() == 1);
    CHECK(twin_classes(shapes::path(3)).size() == 3);
    const auto c = twin_classes(make_graph(3, {{0, 1}}));
    REQUIRE(c.size() == 2);
    CHECK(c[0] == vertex_list{0, 1});
    CHECK(c[1] == vertex_list{2});

    rng_t rng(8);
    for (int round = 0; round < 30; ++round) {
        const graph g = random_graph(rng, uniform(rng, 1, 10), 0.6);
        const auto classes = twin_classes(g);
        std::vector<int> cls(g.n());
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (vertex v : classes[i]) cls[v] = static_cast<int>(i);
        for (vertex u = 0; u < g.n(); ++u)
            for (vertex v = u + 1; v < g.n(); ++v) {
                bool same = g.adjacent(u, v);
                for (vertex x = 0; x < g.n() && same; ++x)
                    if (x != u && x != v) same = g.adjacent(u, x) == g.adjacent(v, x);
                CHECK(same == (cls[u] == cls[v]));
            }
    }
}

TEST_CASE("line_graph examples") {
    CHECK(line_graph(multigraph{4, {{0, 1}, {1, 2}, {2, 3}}}) == shapes::path(3));
    CHECK(line_graph(multigraph{3, {{0, 1}, {1, 2}, {0, 2}}}) == shapes::complete(3));
    CHECK(line_graph(multigraph{2, {{0, 1}, {0, 1}}}) == shapes::complete(2));
    CHECK_THROWS_AS(line_graph(multigraph{2, {{1, 1}}}), input_error);
}

TEST_CASE("recognize_line_graph examples") {
    auto tri = recognize_line_graph(shapes::complete(3));
    REQUIRE(tri);
    CHECK(tri->n == 3);
    auto star = recognize_line_graph(shapes::complete(3), triangle_preimage::star);
    REQUIRE(star);
    CHECK(star->n == 4);
    CHECK(line_graph(*star) == shapes::complete(3));
    CHECK_FALSE(recognize_line_graph(shapes::star(3)));
    auto p = recognize_line_graph(shapes::path(3));
    REQUIRE(p);
    CHECK(p->edges.size() == 3);
    CHECK(isomorphic(line_graph(*p), shapes::path(3)));
    CHECK(p->n == 4);
}

TEST_CASE("line graphs of random multigraphs are recognized and claw-free") {
    rng_t rng(21);
    int tried = 0;
    while (tried < 150) {
        const int nv = uniform(rng, 2, 7);
        const int ne = uniform(rng, 1, 8);
        multigraph m{nv, {}};
        for (int i = 0; i < ne; ++i) {
            int a = uniform(rng, 0, nv - 1), b = uniform(rng, 0, nv - 1);
            if (a == b) continue;
            m.edges.emplace_back(a, b);
        }
        if (m.edges.empty()) continue;
        const graph l = line_graph(m);
        CHECK(star_free(l, 3));
        if (!is_connected(l)) continue;
        ++tried;
        auto pre = recognize_line_graph(l);
        REQUIRE(pre);
        CHECK(line_graph(*pre) == l);
    }
}

TEST_CASE("recognize_line_graph agrees with label-assignment oracle") {
    rng_t rng(99);
    int tried = 0;
    while (tried < 120) {
        const graph g = random_graph(rng, uniform(rng, 1, 6), 0.5);
        if (!is_connected(g)) continue;
        ++tried;
        CHECK(recognize_line_graph(g).has_value() == naive_is_multigraph_line_graph(g));
    }
}
