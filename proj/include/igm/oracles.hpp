#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "igm/graph.hpp"

namespace igm {

// Caps for exponential oracles. Exceeding one throws size_limit_error.
struct oracle_limits {
    int mis_vertices = 256;
    int wis_vertices = 2048;
    int occurrences = 20000;
};

const oracle_limits& default_limits();

bool star_free(const graph& g, int t);

struct mis_result {
    int size = 0;
    vertex_list witness;  // sorted
};

mis_result brute_force_mis(const graph& g, const oracle_limits& lim = default_limits());

// Stops as soon as an independent set of size `target` is found (target < 0: maximum).
mis_result brute_force_mis_bounded(const graph& g, int target, const oracle_limits& lim = default_limits());

struct wis_result {
    bool feasible = false;
    vertex_list witness;
};

wis_result brute_force_wis(const graph& g, std::span<const std::int64_t> weights, int k_card,
                           std::int64_t k_weight, const oracle_limits& lim = default_limits());

// One witness per image vertex set: the lexicographically smallest map. Sorted by image set.
std::vector<occurrence> enumerate_occurrences(const graph& g, const pattern& h,
                                              const oracle_limits& lim = default_limits());

bool is_occurrence(const graph& g, const pattern& h, const occurrence& o);
bool compatible(const occurrence& a, const occurrence& b, const graph& g);
bool is_valid_matching(const graph& g, const pattern& h, const matching& m);

// Maximum induced H-matching, optionally stopping once `target` occurrences are packed.
matching brute_force_max_igm(const graph& g, const pattern& h, int target = -1,
                             const oracle_limits& lim = default_limits());
std::optional<matching> brute_force_igm(const graph& g, const pattern& h, int k,
                                        const oracle_limits& lim = default_limits());

// Same search, over a precomputed occurrence list.
matching max_compatible_subset(const graph& g, std::span<const occurrence> occs, int target = -1,
                               const oracle_limits& lim = default_limits());

// True twins: equal closed neighborhoods. Classes sorted by smallest member.
std::vector<vertex_list> twin_classes(const graph& g);

}  // namespace igm
