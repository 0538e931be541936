#pragma once

#include <optional>

#include "igm/graph.hpp"

namespace igm {

// Vertex i of the result is edge i of m.
graph line_graph(const multigraph& m);

enum class triangle_preimage { cycle, star };

// Pre-image M with line_graph(M) equal to g under the identity map (edge i <-> vertex i).
// Requires g connected.
std::optional<multigraph> recognize_line_graph(const graph& g,
                                               triangle_preimage tri = triangle_preimage::cycle);

}  // namespace igm
