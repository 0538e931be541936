#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igm/graph.hpp"
#include "igm/notes.hpp"
#include "igm/strip.hpp"

namespace igm {

// A graph obtained by deleting vertices; origin[v] is v's id in the input graph.
struct reduced_graph {
    graph g;
    vertex_list origin;
};

// Induced subgraph on `keep` (sorted) with the strip-structure restricted to it.
// Strip-edges left without host nodes and strip-vertices left without strip-edges are dropped.
strip_structure restrict_structure(const strip_structure& ss, std::span<const vertex> keep);

// Deletes every vertex that lies in no occurrence of H.
reduced_graph prune_useless_vertices(const graph& g, const pattern& h);

// Number of distinct strip-vertices sharing a strip-edge with `label`.
int dis_degree(const strip_structure& ss, int label);
int dis_degree_threshold(int h, int k);

struct dis_degree_result {
    reduced_graph reduced;
    int k = 0;
};

// G - C(label) with k - 1. Throws input_error when the dis-degree is below the threshold.
dis_degree_result apply_dis_degree_rule(const graph& g, const strip_structure& ss, const pattern& h, int k,
                                        int label);

// Per strip-edge: does its interior (hosts outside every boundary) contain an occurrence of H.
std::vector<char> classify_promising(const strip_structure& ss, const pattern& h);

struct reduction_result {
    vertex_list removed;          // host vertices of the strips that were not selected, sorted
    std::vector<int> kept_edges;  // ids of the selected non-promising strip-edges on the pair
};

// Reduction step on the strip-vertex pair {x, y} (x == y for single-member edges).
// Throws input_error unless more than 2h non-promising strip-edges lie on the pair.
reduction_result reduction_step_nonpromising(const strip_structure& ss, int x, int y, const pattern& h);

enum class structure_provider { line_graph, manual };

enum class bound_status { decided_yes, decided_no, reduced, partial };

struct bound_result {
    bound_status status = bound_status::reduced;
    reduced_graph reduced;
    int k = 0;
    std::optional<strip_structure> ss;
    int rounds = 0;
    std::string detail;
    run_notes notes;
};

// Prune, greedy matching, dis-degree rule, promising count and reduction steps,
// repeated until none applies. H must be complete and g claw-free.
bound_result bound_strip_graph(const graph& g, const pattern& h, int k, structure_provider provider,
                               const strip_structure* manual = nullptr);

enum class profile_join { independent, clique };

// Maximum induced H-matching inside the strip's hosts under the boundary profile
// (i at the first member, j at the second; -1 touches the boundary, i >= 0 leaves
// room for i boundary vertices). Absent when no matching meets the profile.
// Single-member stripes ignore j and the join.
std::optional<int> stripe_profile_weight(const strip_edge& e, int i, int j, profile_join f, const pattern& h);

struct wis_instance {
    graph g;
    std::vector<std::int64_t> weights;
    int k_card = 0;
    std::int64_t k_weight = 0;
    std::vector<std::string> tags;  // role of each vertex
    std::vector<int> clique_of;     // selection clique per vertex
    int clique_count = 0;
    bool trivial = false;
    std::vector<std::string> warnings;
};

wis_instance trivial_wis(bool yes);

// Selection-clique instance for complete H on a strip-structure of g.
wis_instance build_wis_instance(const graph& g, const strip_structure& ss, const pattern& h, int k);

// Concrete vertex-count ceiling for build_wis_instance on this structure.
std::int64_t wis_size_ceiling(const strip_structure& ss, int h);

struct kernel_result {
    bound_result bound;
    wis_instance wis;
};

kernel_result kernelize(const graph& g, const pattern& h, int k, structure_provider provider,
                        const strip_structure* manual = nullptr);

}  // namespace igm
