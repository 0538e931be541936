#pragma once

#include <span>
#include <string>
#include <vector>

#include "igm/graph.hpp"

namespace igm {

// A generated instance: the graph, its parameter and a label per vertex naming its origin.
struct gadget_instance {
    graph g;
    int k = 0;
    std::vector<std::string> labels;
};

// Multicolored clique (colors 1..k, one per vertex) to independent set on a K_{1,4}-free graph.
// The target is 2k(k-1). Vertex gadgets come first (by color, row, column), then edge gadgets
// (by color pair, edge, column).
gadget_instance mcc_to_is_k14(const graph& g, std::span<const int> colors, int k);

// Vertex count of mcc_to_is_k14 computed from the color classes and the colored edge sets.
int mcc_gadget_size(const graph& g, std::span<const int> colors, int k);

// Replaces every vertex by a twin clique of size |V(H)|; vertex v copy c becomes v*h + c.
gadget_instance is_to_igm_blowup(const graph& g, int k, const pattern& h);

// Subdivides every edge of a cubic graph and takes the line graph; the pattern is K3.
gadget_instance cubic_is_to_triangle_matching(const graph& g, int k);

// Brute-force multicolored clique check for small inputs.
bool has_multicolored_clique(const graph& g, std::span<const int> colors, int k);

}  // namespace igm
