#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "igm/graph.hpp"
#include "igm/models.hpp"
#include "igm/notes.hpp"

namespace igm {

struct weighted_interval {
    coord l = 0;
    coord r = 0;
    std::int64_t weight = 0;
};

struct interval_wis_result {
    std::int64_t weight = 0;
    int cardinality = 0;
    vertex_list witness;  // sorted input indices
};

// Maximum weight, then maximum cardinality, then lexicographically smallest witness.
interval_wis_result interval_wis(std::span<const weighted_interval> items);

matching max_igm_interval(const interval_model& model, const pattern& h);
std::optional<matching> solve_igm_proper_interval(const interval_model& model, const pattern& h, int k);

std::optional<occurrence> solve_isi_long_proper_ca(const arc_model& model_g, const arc_model& model_h);

// h_model may be null; the single-occurrence fallback then searches occurrences directly.
std::optional<matching> solve_igm_long_proper_ca(const arc_model& model, const pattern& h, const arc_model* h_model,
                                                 int k, run_notes* notes = nullptr);

// Total pattern size k * h must stay within this cap.
inline constexpr int disconnected_pattern_cap = 8;

std::optional<matching> solve_igm_proper_ca_disconnected(const arc_model& model, const pattern& h, int k);

}  // namespace igm
