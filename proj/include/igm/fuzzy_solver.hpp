#pragma once

#include <optional>

#include "igm/graph.hpp"
#include "igm/models.hpp"
#include "igm/oracles.hpp"

namespace igm {

// compatible(a, b, g) lives in oracles.hpp.

// Value-only variant for one fixed starting occurrence; exposed for the
// independence-from-start property.
int fuzzy_dp_value_from(const fuzzy_arc_model& model, const pattern& h, std::size_t start);

matching max_igm_fuzzy_ca(const fuzzy_arc_model& model, const pattern& h, int target = -1);
std::optional<matching> solve_igm_fuzzy_ca(const fuzzy_arc_model& model, const pattern& h, int k);

inline constexpr int default_alpha_bound = 4;

// Requires alpha(g) <= alpha_bound; verified by brute force unless alpha_trusted.
matching max_igm_small_alpha(const graph& g, const pattern& h, int alpha_bound = default_alpha_bound,
                             bool alpha_trusted = false);
std::optional<matching> solve_igm_small_alpha(const graph& g, const pattern& h, int k,
                                              int alpha_bound = default_alpha_bound, bool alpha_trusted = false);

}  // namespace igm
