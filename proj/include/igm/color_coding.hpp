#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "igm/graph.hpp"
#include "igm/models.hpp"
#include "igm/notes.hpp"
#include "igm/strip.hpp"

namespace igm {

// Token t stands for pattern vertex t % h of group t / h.
struct token_set {
    int h = 0;
    int k = 0;

    int size() const { return h * k; }
    int group(int t) const { return t / h; }
    int pattern_vertex(int t) const { return t % h; }
};

// Where a token sits inside an edge: on a spot, in the interior, or in the boundary
// at the edge's i-th member.
enum class slot_kind { spot, interior, boundary };

struct token_slot {
    slot_kind kind = slot_kind::interior;
    int member = 0;  // meaningful for boundary slots

    friend auto operator<=>(const token_slot&, const token_slot&) = default;
};

struct base_edge {
    bool spot = false;
    std::vector<int> members;  // base vertex ids, 1 or 2

    friend bool operator==(const base_edge&, const base_edge&) = default;
};

// Candidate covered subgraph with a token annotation. Every edge carries at least one
// token; a spot carries exactly one.
struct base {
    token_set tokens;
    int vertex_count = 0;
    std::vector<base_edge> edges;
    std::vector<int> token_edge;          // edge index per token
    std::vector<token_slot> token_place;  // slot per token

    friend bool operator==(const base& a, const base& b) {
        return a.tokens.h == b.tokens.h && a.tokens.k == b.tokens.k && a.vertex_count == b.vertex_count &&
               a.edges == b.edges && a.token_edge == b.token_edge && a.token_place == b.token_place;
    }
};

// Invariant check: all tokens assigned, member and slot ranges, spot shape.
bool is_well_formed(const base& b);

// Isomorphism-invariant encoding: equal iff the bases are isomorphic.
std::vector<int> canonical_form(const base& b);

// All bases up to isomorphism, each visited once. Stops when `visit` returns true.
void enumerate_bases(int h, int k, const std::function<bool(const base&)>& visit);
std::int64_t count_bases(int h, int k);

bool check_condition1(const base& b, const pattern& h);
bool check_condition2(const base& b, const pattern& h);

// Colors: one per base vertex, then per edge either a spot color or an interior color
// followed by one boundary color per member.
struct palette {
    int size = 0;
    std::vector<int> vertex_color;
    std::vector<int> spot_color;                 // -1 for stripes
    std::vector<int> interior_color;             // -1 for spots
    std::vector<std::vector<int>> boundary_color;  // per edge, per member; empty for spots

    explicit palette(const base& b);
    // Color sequence of a base edge.
    std::vector<int> sequence(const base& b, std::size_t edge) const;
};

enum class element_kind { vertex, spot, interior, boundary };

struct element {
    element_kind kind = element_kind::vertex;
    int label = 0;         // strip-vertex label for vertex elements
    std::size_t edge = 0;  // strip-edge index otherwise
    int member = 0;        // member index for boundary elements
};

// Vertex elements first (in label order), then edge elements in edge order.
// Empty strip-edges carry no elements.
std::vector<element> elements_of(const strip_structure& ss);

inline constexpr int blank_color = -1;
using element_coloring = std::vector<int>;

struct edge_image {
    std::size_t base_edge = 0;
    bool reversed = false;  // strip member i corresponds to base member (1 - i)
};

struct base_surjection {
    std::map<int, int> vertex;                  // strip-vertex label -> base vertex
    std::map<std::size_t, edge_image> edge;     // strip-edge index -> base edge
};

struct blank_result {
    element_coloring coloring;
    base_surjection delta;
};

// Applies the blanking rules; absent when some palette color is no longer used.
std::optional<blank_result> blank(const element_coloring& f, const strip_structure& ss,
                                  const std::vector<element>& elements, const base& b, const palette& pal);
element_coloring apply_blanking(const element_coloring& f, const strip_structure& ss,
                                const std::vector<element>& elements, const base& b, const palette& pal);

// A token placed in a strip slot.
struct placed_token {
    int token = 0;
    token_slot slot;

    friend auto operator<=>(const placed_token&, const placed_token&) = default;
};

struct realized_vertex {
    vertex host = 0;
    int token = 0;
};

// Realization of the boundary-touching token groups of one strip-edge, with the
// best matching left in the interior.
struct strip_realization {
    std::vector<realized_vertex> realized;
    std::vector<occurrence> interior;
};

// Best realization for the tokens placed on strip-edge `e`; absent if none is consistent.
std::optional<strip_realization> best_realization(const strip_edge& e, const pattern& h, const token_set& ts,
                                                  std::vector<placed_token> tokens, run_notes* notes = nullptr);

// One occurrence per group among realized vertices; succeeds when these and the
// interior occurrences reach k. The witness is cut to k occurrences.
std::optional<matching> global_matching_step(const graph& g, const pattern& h, int k, const token_set& ts,
                                             std::span<const strip_realization* const> parts);

enum class coloring_mode {
    exhaustive,  // every natural coloring of an embedded base (answer-equivalent to all colorings)
    literal,     // every palette assignment to every element, size-capped
    random,      // seeded uniform colorings per base
};

struct claw_free_options {
    coloring_mode mode = coloring_mode::exhaustive;
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    int token_cap = 6;                          // h * k limit for base enumeration
    std::int64_t literal_cap = 2'000'000;       // colorings per run in literal mode
    bool force_pipeline = false;                // skip the small-alpha and fuzzy dispatch
};

enum class answer_kind { yes, no, unknown };

struct claw_free_result {
    answer_kind answer = answer_kind::no;
    matching witness;
    run_notes notes;
    // Per host vertex: 1 + token group in the accepted global step, 0 otherwise.
    // Empty unless the answer came from the pipeline.
    std::vector<int> classes;
};

enum class structure_source { given, trivial, line_graph };

claw_free_result solve_igm_claw_free(const graph& g, const pattern& h, int k, structure_source source,
                                     const strip_structure* given, const fuzzy_arc_model* whole_model,
                                     const claw_free_options& options = {});

// Pipeline only, on a validated structure; exposed for tests.
claw_free_result run_pipeline(const graph& g, const strip_structure& ss, const pattern& h, int k,
                              const claw_free_options& options = {});

}  // namespace igm
