#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "igm/graph.hpp"

namespace igm {

// Host true twins are interchangeable; the search only visits embeddings whose images
// inside each twin class form a prefix of that class. `host_mask` limits this to the
// flagged vertices; empty means all. When both `pattern_pinned` and `host_pinned` are
// non-empty, pinned pattern vertices map only to pinned host vertices and vice versa.
struct embedding_symmetry {
    std::vector<char> host_mask;
    std::vector<char> pattern_pinned;
    std::vector<char> host_pinned;
};

// Calls `visit` with each induced embedding (map[i] = host image of pattern vertex i),
// modulo the host twin symmetries selected by `sym`. Stops when `visit` returns true.
// Returns true iff stopped early.
bool for_each_induced_embedding(const graph& pat, const graph& host, const embedding_symmetry& sym,
                                const std::function<bool(const vertex_list&)>& visit);

std::optional<vertex_list> find_induced_embedding(const graph& pat, const graph& host);

// Brute-force isomorphism test (desk scale).
bool isomorphic(const graph& a, const graph& b);

}  // namespace igm
