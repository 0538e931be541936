#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "igm/errors.hpp"
#include "igm/graph.hpp"
#include "igm/kernel.hpp"
#include "igm/models.hpp"
#include "igm/strip.hpp"

namespace igm {

// Malformed file; the message reads "<source>:<line>:<column>: <what>".
struct parse_error : input_error {
    parse_error(const std::string& source, int line, int column, const std::string& what);
    std::string source;
    int line = 0;
    int column = 0;
};

// Every format accepts blank lines and '#' comments.

graph parse_graph(std::string_view text, const std::string& source = "<graph>");
std::string emit_graph(const graph& g);

multigraph parse_multigraph(std::string_view text, const std::string& source = "<multigraph>");
std::string emit_multigraph(const multigraph& m);

interval_model parse_interval_model(std::string_view text, const std::string& source = "<intervals>");
std::string emit_interval_model(const interval_model& m);

arc_model parse_arc_model(std::string_view text, const std::string& source = "<arcs>");
std::string emit_arc_model(const arc_model& m);

fuzzy_arc_model parse_fuzzy_model(std::string_view text, const std::string& source = "<fuzzy arcs>");
std::string emit_fuzzy_model(const fuzzy_arc_model& m);

// Strip-structure file. Fuzzy certificates keep their file reference; models are attached by
// load_strip_structure.
struct strip_file {
    std::string graph_ref;
    strip_structure ss;
    friend bool operator==(const strip_file&, const strip_file&) = default;
};

strip_file parse_strip_structure(std::string_view text, const std::string& source = "<strip-structure>");
std::string emit_strip_structure(const strip_file& f);

wis_instance parse_wis(std::string_view text, const std::string& source = "<wis>");
std::string emit_wis(const wis_instance& w);

// Colors 1..k per vertex of a graph on n vertices; every vertex must be colored once.
std::vector<int> parse_colors(std::string_view text, int n, const std::string& source = "<colors>");
std::string emit_colors(const std::vector<int>& colors);

// Per-vertex labels for generated graphs.
std::vector<std::string> parse_provenance(std::string_view text, int n, const std::string& source = "<provenance>");
std::string emit_provenance(const std::vector<std::string>& labels);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

graph load_graph(const std::filesystem::path& path);

// Reads a strip-structure and resolves fuzzy certificate files relative to it.
strip_file load_strip_structure(const std::filesystem::path& path);

}  // namespace igm
