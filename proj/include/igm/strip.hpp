#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "igm/graph.hpp"
#include "igm/models.hpp"
#include "igm/oracles.hpp"

namespace igm {

// A strip node is either a host vertex or a marker tagged with a strip-vertex label.
enum class strip_node_kind { host, marker };

struct strip_node {
    strip_node_kind kind = strip_node_kind::host;
    int id = 0;  // host vertex id, or strip-vertex label for markers

    friend bool operator==(const strip_node&, const strip_node&) = default;
};

struct strip {
    graph j;
    std::vector<strip_node> nodes;  // nodes[x] describes vertex x of j

    // Strip positions of host nodes and markers, in node order.
    vertex_list host_positions() const;
    vertex_list marker_positions() const;
    // Host ids of host nodes, in node order.
    vertex_list host_vertices() const;
    std::optional<vertex> marker_of(int label) const;
    // Host ids adjacent to the marker for `label`; empty if there is none.
    vertex_list boundary(int label) const;
    // Host ids of nodes not adjacent to any marker.
    vertex_list interior() const;

    friend bool operator==(const strip&, const strip&) = default;
};

enum class strip_kind { spot, stripe, neither };
strip_kind classify_strip(const strip& s);

enum class certificate_kind { none, fuzzy, alpha4 };

// A fuzzy certificate carries a model whose arc i is the i-th host node of the strip.
struct strip_certificate {
    certificate_kind kind = certificate_kind::none;
    std::string source;  // file reference for fuzzy certificates
    std::optional<fuzzy_arc_model> model;

    friend bool operator==(const strip_certificate&, const strip_certificate&) = default;
};

struct strip_edge {
    int id = 0;
    std::vector<int> members;  // 0, 1 or 2 strip-vertex labels
    strip s;
    strip_certificate cert;

    friend bool operator==(const strip_edge&, const strip_edge&) = default;
};

struct strip_structure {
    std::vector<int> vertices;  // strip-vertex labels
    std::vector<strip_edge> edges;

    // Indices into `edges` of strip-edges containing `label`.
    std::vector<std::size_t> edges_at(int label) const;
    // Union of boundaries at `label`, sorted.
    vertex_list clique_at(int label) const;

    friend bool operator==(const strip_structure&, const strip_structure&) = default;
};

struct check_result {
    bool pass = true;
    std::string counterexample;

    void fail(std::string why) {
        if (pass) counterexample = std::move(why);
        pass = false;
    }
};

struct strip_report {
    check_result shape;           // labels, ids and member counts are well-formed
    check_result strips;          // each strip satisfies the strip definition
    check_result partition;       // host parts partition V(G)
    check_result claw_free;       // every J is claw-free
    check_result markers;         // one marker per member, no others
    check_result cliques;         // every C(r) is a clique in G
    check_result edge_coverage;   // every G-edge lies in a strip or in some C(r)
    std::vector<std::string> warnings;

    bool ok() const;
};

strip_report validate_strip_structure(const graph& g, const strip_structure& ss);

struct covered_subgraph {
    std::vector<int> edges;     // ids of covered strip-edges
    std::vector<int> vertices;  // members of covered strip-edges
    std::vector<int> covered_vertices;  // labels r whose C(r) meets the matching
};

covered_subgraph covered_by(const strip_structure& ss, const matching& m);

strip_structure trivial_strip_structure(const graph& g);

// Strip-structure derived from a line-graph pre-image; components are handled
// separately and combined. Absent if some component is not a line graph.
std::optional<strip_structure> line_graph_strip_structure(const graph& g);

struct conformance_entry {
    int edge_id = 0;
    bool pass = false;
    std::string reason;
};

struct conformance_report {
    std::vector<conformance_entry> entries;
    bool ok() const;
};

conformance_report conformance_check(const strip_structure& ss, const oracle_limits& limits = default_limits());

}  // namespace igm
