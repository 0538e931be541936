#include "igm/models.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "igm/errors.hpp"

namespace igm {

namespace {

struct piece {
    coord lo;
    coord hi;
};

coord full(const arc_model& m) { return 2 * m.circumference; }

coord wrap(coord x, coord len) {
    x %= len;
    return x < 0 ? x + len : x;
}

coord start_h(const arc& a) { return 2 * a.s; }
coord end_h(const arc& a) { return 2 * a.t; }
coord length_h(const arc_model& m, const arc& a) { return wrap(end_h(a) - start_h(a), full(m)); }

// Arc as at most two closed pieces of [0, 2C].
std::vector<piece> pieces(const arc_model& m, const arc& a) {
    const coord s = start_h(a), t = end_h(a);
    if (s < t) return {{s, t}};
    return {{s, full(m)}, {0, t}};
}

std::string pair_name(vertex a, vertex b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

}  // namespace

void check_model(const interval_model& m) {
    for (std::size_t i = 0; i < m.items.size(); ++i)
        if (m.items[i].l >= m.items[i].r)
            throw input_error("interval " + std::to_string(i) + " needs l < r");
}

void check_model(const arc_model& m) {
    if (m.circumference <= 0) throw input_error("circumference must be positive");
    for (std::size_t i = 0; i < m.items.size(); ++i) {
        const arc& a = m.items[i];
        if (a.s < 0 || a.s >= m.circumference || a.t < 0 || a.t >= m.circumference)
            throw input_error("arc " + std::to_string(i) + " has an endpoint outside [0, C)");
        if (a.s == a.t) throw input_error("arc " + std::to_string(i) + " is a single point or the full circle");
    }
}

void check_model(const fuzzy_arc_model& m) {
    check_model(m.arcs);
    const auto needed = one_point_pairs(m.arcs);
    for (const auto& p : needed)
        if (!m.resolutions.contains(p))
            throw input_error("missing fuzzy resolution for one-point pair " + pair_name(p.first, p.second));
    const std::set<vertex_pair> need_set(needed.begin(), needed.end());
    for (const auto& [p, e] : m.resolutions)
        if (!need_set.contains(p))
            throw input_error("fuzzy resolution for pair " + pair_name(p.first, p.second) +
                              " which does not meet in exactly one point");
}

graph realize(const interval_model& m) {
    check_model(m);
    const int n = static_cast<int>(m.items.size());
    graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::max(m.items[i].l, m.items[j].l) <= std::min(m.items[i].r, m.items[j].r)) g.add_edge(i, j);
    return g;
}

graph realize(const arc_model& m) {
    check_model(m);
    const int n = static_cast<int>(m.items.size());
    graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (arc_overlap(m, i, j) != overlap::none) g.add_edge(i, j);
    return g;
}

graph realize(const fuzzy_arc_model& m) {
    check_model(m);
    const int n = static_cast<int>(m.arcs.items.size());
    graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const overlap o = arc_overlap(m.arcs, i, j);
            if (o == overlap::more || (o == overlap::single_point && m.resolutions.at({i, j}))) g.add_edge(i, j);
        }
    return g;
}

bool arc_contains(const arc_model& m, vertex a, circle_point p) {
    const arc& x = m.items[a];
    return wrap(p.halves - start_h(x), full(m)) <= length_h(m, x);
}

overlap arc_overlap(const arc_model& m, vertex a, vertex b) {
    std::set<coord> points;
    for (const piece& p : pieces(m, m.items[a]))
        for (const piece& q : pieces(m, m.items[b])) {
            const coord lo = std::max(p.lo, q.lo), hi = std::min(p.hi, q.hi);
            if (lo < hi) return overlap::more;
            if (lo == hi) points.insert(wrap(lo, full(m)));
        }
    if (points.empty()) return overlap::none;
    return points.size() == 1 ? overlap::single_point : overlap::more;
}

bool arc_subset(const arc_model& m, vertex a, vertex b) {
    const arc& x = m.items[a];
    const arc& y = m.items[b];
    return wrap(start_h(x) - start_h(y), full(m)) + length_h(m, x) <= length_h(m, y);
}

std::vector<vertex_pair> one_point_pairs(const arc_model& m) {
    std::vector<vertex_pair> out;
    const int n = static_cast<int>(m.items.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (arc_overlap(m, i, j) == overlap::single_point) out.emplace_back(i, j);
    return out;
}

bool arcs_cover_circle(const arc_model& m, const vertex_list& which) {
    std::vector<piece> ps;
    for (vertex a : which)
        for (const piece& p : pieces(m, m.items[a])) ps.push_back(p);
    std::sort(ps.begin(), ps.end(), [](const piece& x, const piece& y) { return x.lo < y.lo; });
    coord reach = 0;
    bool started = false;
    for (const piece& p : ps) {
        if (p.lo > reach) break;
        started = true;
        reach = std::max(reach, p.hi);
    }
    return started && reach >= full(m);
}

model_report validate(const arc_model& m) {
    check_model(m);
    const int n = static_cast<int>(m.items.size());
    model_report r;
    r.proper = r.strict = r.almost_proper = r.almost_strict = r.long_arcs = true;
    auto same = [&](int i, int j) { return m.items[i] == m.items[j]; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool contained = arc_subset(m, i, j) || arc_subset(m, j, i);
            if (contained) r.proper = false;
            if (contained && !same(i, j)) r.almost_proper = false;
            const arc &a = m.items[i], &b = m.items[j];
            if (a.s == b.s || a.s == b.t || a.t == b.s || a.t == b.t) r.strict = false;
        }
    // Groups of identical arcs may not share both endpoints with outside arcs.
    std::map<std::pair<coord, coord>, vertex_list> groups;
    for (int i = 0; i < n; ++i) groups[{m.items[i].s, m.items[i].t}].push_back(i);
    for (const auto& [ends, members] : groups) {
        if (members.size() < 2) continue;
        bool s_out = false, t_out = false;
        for (int j = 0; j < n; ++j) {
            if (m.items[j].s == ends.first && m.items[j].t == ends.second) continue;
            const arc& b = m.items[j];
            s_out = s_out || b.s == ends.first || b.t == ends.first;
            t_out = t_out || b.s == ends.second || b.t == ends.second;
        }
        if (s_out && t_out) r.almost_strict = false;
    }
    for (int i = 0; i < n && r.long_arcs; ++i)
        for (int j = i; j < n && r.long_arcs; ++j)
            for (int k = j; k < n && r.long_arcs; ++k)
                if (arcs_cover_circle(m, {i, j, k})) r.long_arcs = false;
    vertex_list all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    r.covers_circle = arcs_cover_circle(m, all);
    return r;
}

model_report validate(const interval_model& m) {
    check_model(m);
    const int n = static_cast<int>(m.items.size());
    model_report r;
    r.proper = r.strict = r.almost_proper = r.almost_strict = r.long_arcs = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const interval &a = m.items[i], &b = m.items[j];
            const bool contained = (a.l <= b.l && b.r <= a.r) || (b.l <= a.l && a.r <= b.r);
            if (contained) r.proper = false;
            if (contained && !(a == b)) r.almost_proper = false;
            if (a.l == b.l || a.l == b.r || a.r == b.l || a.r == b.r) r.strict = false;
        }
    std::map<std::pair<coord, coord>, int> groups;
    for (const auto& it : m.items) ++groups[{it.l, it.r}];
    for (const auto& [ends, size] : groups) {
        if (size < 2) continue;
        bool l_out = false, r_out = false;
        for (const auto& b : m.items) {
            if (b.l == ends.first && b.r == ends.second) continue;
            l_out = l_out || b.l == ends.first || b.r == ends.first;
            r_out = r_out || b.l == ends.second || b.r == ends.second;
        }
        if (l_out && r_out) r.almost_strict = false;
    }
    return r;
}

std::vector<circle_point> equivalence_points(const arc_model& m) {
    std::set<coord> ends;
    for (const arc& a : m.items) {
        ends.insert(start_h(a));
        ends.insert(end_h(a));
    }
    if (ends.empty()) return {circle_point{0}};
    const std::vector<coord> e(ends.begin(), ends.end());
    std::set<coord> reps(ends);
    for (std::size_t i = 0; i < e.size(); ++i) {
        const coord a = e[i];
        const coord gap = e.size() == 1 ? full(m) : wrap(e[(i + 1) % e.size()] - a, full(m));
        reps.insert(wrap(a + gap / 2, full(m)));
    }
    std::vector<circle_point> out;
    for (coord c : reps) out.push_back(circle_point{c});
    return out;
}

cut_result cut_at_point(const arc_model& m, circle_point p) {
    check_model(m);
    cut_result out;
    for (int i = 0; i < static_cast<int>(m.items.size()); ++i) {
        if (arc_contains(m, i, p)) {
            out.removed.push_back(i);
            continue;
        }
        const arc& a = m.items[i];
        out.intervals.items.push_back({wrap(start_h(a) - p.halves, full(m)), wrap(end_h(a) - p.halves, full(m))});
        out.kept.push_back(i);
    }
    return out;
}

}  // namespace igm

namespace igm {

fuzzy_arc_model restrict_model(const fuzzy_arc_model& m, std::span<const vertex> keep) {
    fuzzy_arc_model out;
    out.arcs.circumference = m.arcs.circumference;
    for (vertex v : keep) out.arcs.items.push_back(m.arcs.items.at(v));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            const vertex_pair key{std::min(keep[a], keep[b]), std::max(keep[a], keep[b])};
            const auto it = m.resolutions.find(key);
            if (it != m.resolutions.end())
                out.resolutions[{static_cast<vertex>(a), static_cast<vertex>(b)}] = it->second;
        }
    return out;
}

}  // namespace igm
