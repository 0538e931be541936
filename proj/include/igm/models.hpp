#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "igm/graph.hpp"

namespace igm {

using coord = std::int64_t;

// Closed interval [l, r], l < r. Vertex id = position in the model.
struct interval {
    coord l = 0;
    coord r = 0;
    friend bool operator==(const interval&, const interval&) = default;
};

struct interval_model {
    std::vector<interval> items;
    friend bool operator==(const interval_model&, const interval_model&) = default;
};

// Closed arc from s clockwise to t on a circle of the given circumference, s != t.
struct arc {
    coord s = 0;
    coord t = 0;
    friend bool operator==(const arc&, const arc&) = default;
};

struct arc_model {
    coord circumference = 0;
    std::vector<arc> items;
    friend bool operator==(const arc_model&, const arc_model&) = default;
};

using vertex_pair = std::pair<vertex, vertex>;  // first < second

struct fuzzy_arc_model {
    arc_model arcs;
    std::map<vertex_pair, bool> resolutions;  // true = edge
    friend bool operator==(const fuzzy_arc_model&, const fuzzy_arc_model&) = default;
};

// A point on the circle in half units, so midpoints of integer points stay exact.
struct circle_point {
    coord halves = 0;
    static constexpr circle_point at(coord p) { return {2 * p}; }
    friend auto operator<=>(const circle_point&, const circle_point&) = default;
};

struct model_report {
    bool proper = false;
    bool strict = false;
    bool almost_proper = false;
    bool almost_strict = false;
    bool long_arcs = false;
    bool covers_circle = false;
    friend bool operator==(const model_report&, const model_report&) = default;
};

enum class overlap { none, single_point, more };

// Throws input_error on l >= r, s == t, coordinates off the circle, or bad resolutions.
void check_model(const interval_model& m);
void check_model(const arc_model& m);
void check_model(const fuzzy_arc_model& m);

// Sub-model on the listed arcs; arc i of the result is keep[i].
fuzzy_arc_model restrict_model(const fuzzy_arc_model& m, std::span<const vertex> keep);

graph realize(const interval_model& m);
graph realize(const arc_model& m);
graph realize(const fuzzy_arc_model& m);

model_report validate(const interval_model& m);
model_report validate(const arc_model& m);

bool arc_contains(const arc_model& m, vertex a, circle_point p);
overlap arc_overlap(const arc_model& m, vertex a, vertex b);
bool arc_subset(const arc_model& m, vertex a, vertex b);
std::vector<vertex_pair> one_point_pairs(const arc_model& m);

// Union of the selected arcs covers the whole circle (interval sweep).
bool arcs_cover_circle(const arc_model& m, const vertex_list& which);

std::vector<circle_point> equivalence_points(const arc_model& m);

// Remaining arcs as intervals in half units measured clockwise from p.
struct cut_result {
    interval_model intervals;
    vertex_list kept;     // interval i came from arc kept[i]
    vertex_list removed;  // arcs containing p
};

cut_result cut_at_point(const arc_model& m, circle_point p);

}  // namespace igm
