#include "igm/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <regex>

#include "igm/color_coding.hpp"
#include "igm/errors.hpp"
#include "igm/fuzzy_solver.hpp"
#include "igm/gadgets.hpp"
#include "igm/interval_solvers.hpp"
#include "igm/io.hpp"
#include "igm/kernel.hpp"
#include "igm/line_graph.hpp"
#include "igm/oracles.hpp"
#include "igm/strip.hpp"

namespace igm {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Pattern from a ".g" file, or a shorthand K<n>, P<n>, C<n>, S<n> (star with n leaves).
pattern load_pattern(const std::string& spec) {
    if (fs::exists(spec)) return pattern(load_graph(spec));
    static const std::regex shorthand("([KPCS])([0-9]+)");
    std::smatch m;
    if (!std::regex_match(spec, m, shorthand)) throw input_error("pattern '" + spec + "' is neither a file nor K<n>/P<n>/C<n>/S<n>");
    const int n = std::stoi(m[2]);
    if (n < 1 || n > 64) throw input_error("pattern size out of range in '" + spec + "'");
    switch (spec[0]) {
        case 'K': return pattern(shapes::complete(n));
        case 'P': return pattern(shapes::path(n));
        case 'C':
            if (n < 3) throw input_error("cycles need at least 3 vertices");
            return pattern(shapes::cycle(n));
        default: return pattern(shapes::star(n));
    }
}

json matching_json(const matching& m) {
    std::vector<vertex_list> occs;
    for (const auto& o : m.occurrences) occs.push_back(o.sorted_vertices());
    std::sort(occs.begin(), occs.end());
    return occs;
}

json notes_json(const run_notes& notes) {
    json counts = json::object();
    for (const auto& [k, v] : notes.counters) counts[k] = v;
    return counts;
}

struct timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

// Graph from --graph, checked against the model's realization when both are present.
graph host_graph(const std::string& graph_path, const std::optional<graph>& realized) {
    if (graph_path.empty()) {
        if (!realized) throw input_error("--graph is required");
        return *realized;
    }
    graph g = load_graph(graph_path);
    if (realized && !(*realized == g)) throw input_error("the model does not realize " + graph_path);
    return g;
}

struct solve_args {
    std::string graph_path, h_spec, interval_path, arc_path, fuzzy_path, ss_path;
    int k = 1;
    std::string colorings = "exhaustive";
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    int base_cap = 6;
    bool timings = false;
    int threads = 1;
};

json solve(const solve_args& a) {
    const timer clock;
    const pattern h = load_pattern(a.h_spec);
    if (a.k < 0) throw input_error("k must be nonnegative");
    run_notes notes;
    std::optional<matching> found;
    answer_kind answer = answer_kind::no;
    std::string solver;
    std::optional<graph> realized;
    graph g;

    if (!a.interval_path.empty()) {
        const interval_model m = parse_interval_model(read_file(a.interval_path), a.interval_path);
        realized = realize(m);
        g = host_graph(a.graph_path, realized);
        if (h.is_connected()) {
            solver = "interval";
            matching best = max_igm_interval(m, h);
            if (best.size() >= a.k) {
                best.occurrences.resize(a.k);
                found = best;
            }
        } else {
            solver = "proper-interval";
            found = solve_igm_proper_interval(m, h, a.k);
        }
    } else if (!a.arc_path.empty()) {
        const arc_model m = parse_arc_model(read_file(a.arc_path), a.arc_path);
        realized = realize(m);
        g = host_graph(a.graph_path, realized);
        if (h.is_connected()) {
            solver = "long-proper-arc";
            found = solve_igm_long_proper_ca(m, h, nullptr, a.k, &notes);
        } else {
            solver = "proper-arc-disconnected";
            found = solve_igm_proper_ca_disconnected(m, h, a.k);
        }
    } else if (!a.fuzzy_path.empty()) {
        const fuzzy_arc_model m = parse_fuzzy_model(read_file(a.fuzzy_path), a.fuzzy_path);
        realized = realize(m);
        g = host_graph(a.graph_path, realized);
        solver = "fuzzy-arc";
        found = solve_igm_fuzzy_ca(m, h, a.k);
    } else {
        claw_free_options opt;
        if (a.colorings == "exhaustive") opt.mode = coloring_mode::exhaustive;
        else if (a.colorings == "random") opt.mode = coloring_mode::random;
        else if (a.colorings == "literal") opt.mode = coloring_mode::literal;
        else throw input_error("--colorings must be exhaustive, random or literal");
        opt.trials = a.trials;
        opt.seed = a.seed;
        opt.token_cap = a.base_cap;
        claw_free_result r;
        if (!a.ss_path.empty()) {
            const strip_file f = load_strip_structure(a.ss_path);
            const std::string graph_path =
                a.graph_path.empty() ? (fs::path(a.ss_path).parent_path() / f.graph_ref).string() : a.graph_path;
            g = load_graph(graph_path);
            solver = "claw-free";
            r = solve_igm_claw_free(g, h, a.k, structure_source::given, &f.ss, nullptr, opt);
        } else {
            g = host_graph(a.graph_path, std::nullopt);
            if (!star_free(g, 3)) throw input_error("graph is not claw-free; supply a model or use 'oracle'");
            solver = "claw-free";
            const auto source = line_graph_strip_structure(g) ? structure_source::line_graph : structure_source::trivial;
            r = solve_igm_claw_free(g, h, a.k, source, nullptr, nullptr, opt);
        }
        notes = r.notes;
        answer = r.answer;
        if (r.answer == answer_kind::yes) found = r.witness;
    }
    if (solver != "claw-free") answer = found ? answer_kind::yes : answer_kind::no;
    if (found && !is_valid_matching(g, h, *found)) throw internal_error("solver returned an invalid matching");
    if (found && found->size() < a.k) throw internal_error("solver returned a matching smaller than k");
    if (a.threads > 1) notes.deviate("threads-sequential");

    json out;
    out["answer"] = answer == answer_kind::yes ? "yes" : answer == answer_kind::no ? "no" : "unknown";
    out["matching"] = found ? matching_json(*found) : json::array();
    out["solver"] = solver;
    json stats = notes_json(notes);
    stats["vertices"] = g.n();
    stats["edges"] = g.edge_count();
    if (a.timings) stats["ms"] = clock.ms();
    out["stats"] = stats;
    out["deviations"] = notes.deviations;
    return out;
}

json oracle(const std::string& graph_path, const std::string& h_spec, std::optional<int> k, bool timings) {
    const timer clock;
    const graph g = load_graph(graph_path);
    const pattern h = load_pattern(h_spec);
    json out;
    if (k) {
        if (*k < 0) throw input_error("k must be nonnegative");
        const auto m = brute_force_igm(g, h, *k);
        out["answer"] = m ? "yes" : "no";
        out["matching"] = m ? matching_json(*m) : json::array();
    } else {
        const auto m = brute_force_max_igm(g, h);
        out["maximum"] = m.size();
        out["matching"] = matching_json(m);
    }
    json stats;
    stats["vertices"] = g.n();
    stats["edges"] = g.edge_count();
    if (timings) stats["ms"] = clock.ms();
    out["stats"] = stats;
    out["deviations"] = json::array();
    return out;
}

json report_json(const model_report& r) {
    return {{"proper", r.proper},   {"strict", r.strict},      {"almost_proper", r.almost_proper},
            {"almost_strict", r.almost_strict}, {"long", r.long_arcs}, {"covers_circle", r.covers_circle}};
}

json check_json(const check_result& c) {
    json j{{"pass", c.pass}};
    if (!c.pass) j["counterexample"] = c.counterexample;
    return j;
}

json validate(const std::string& interval_path, const std::string& arc_path, const std::string& fuzzy_path,
              const std::string& ss_path, const std::string& graph_path) {
    json out;
    if (!interval_path.empty()) {
        const auto m = parse_interval_model(read_file(interval_path), interval_path);
        out = report_json(validate(m));
        out["kind"] = "intervals";
        out["valid"] = true;
    } else if (!arc_path.empty()) {
        const auto m = parse_arc_model(read_file(arc_path), arc_path);
        out = report_json(validate(m));
        out["kind"] = "arcs";
        out["valid"] = true;
    } else if (!fuzzy_path.empty()) {
        const auto m = parse_fuzzy_model(read_file(fuzzy_path), fuzzy_path);
        check_model(m);
        out = report_json(validate(m.arcs));
        out["kind"] = "fuzzy-arcs";
        out["one_point_pairs"] = m.resolutions.size();
        out["valid"] = true;
    } else if (!ss_path.empty()) {
        const strip_file f = load_strip_structure(ss_path);
        const std::string gp = graph_path.empty() ? (fs::path(ss_path).parent_path() / f.graph_ref).string() : graph_path;
        const graph g = load_graph(gp);
        const strip_report r = validate_strip_structure(g, f.ss);
        out["kind"] = "strip-structure";
        out["valid"] = r.ok();
        out["checks"] = {{"shape", check_json(r.shape)},         {"strips", check_json(r.strips)},
                         {"partition", check_json(r.partition)}, {"claw_free", check_json(r.claw_free)},
                         {"markers", check_json(r.markers)},     {"cliques", check_json(r.cliques)},
                         {"edge_coverage", check_json(r.edge_coverage)}};
        out["warnings"] = r.warnings;
        json conf = json::array();
        for (const auto& e : conformance_check(f.ss).entries)
            conf.push_back({{"edge", e.edge_id}, {"pass", e.pass}, {"reason", e.reason}});
        out["conformance"] = conf;
    } else {
        throw input_error("validate needs one of --interval-model, --arc-model, --fuzzy-model, --strip-structure");
    }
    return out;
}

std::string status_name(bound_status s) {
    switch (s) {
        case bound_status::decided_yes: return "decided-yes";
        case bound_status::decided_no: return "decided-no";
        case bound_status::reduced: return "reduced";
        case bound_status::partial: return "partial";
    }
    throw internal_error("unknown bound status");
}

json kernelize_cmd(const std::string& graph_path, const std::string& h_spec, int k, const std::string& ss_path,
                   const std::string& out_path, bool timings) {
    const timer clock;
    const pattern h = load_pattern(h_spec);
    std::optional<strip_file> f;
    graph g;
    if (!ss_path.empty()) {
        f = load_strip_structure(ss_path);
        g = load_graph(graph_path.empty() ? (fs::path(ss_path).parent_path() / f->graph_ref).string() : graph_path);
    } else {
        g = load_graph(graph_path);
    }
    const auto r = kernelize(g, h, k, f ? structure_provider::manual : structure_provider::line_graph,
                             f ? &f->ss : nullptr);
    json out;
    out["status"] = status_name(r.bound.status);
    out["detail"] = r.bound.detail;
    out["k"] = r.bound.k;
    out["rounds"] = r.bound.rounds;
    out["reduced_vertices"] = r.bound.reduced.g.n();
    if (r.bound.ss) out["strip_edges"] = r.bound.ss->edges.size();
    json stats = notes_json(r.bound.notes);
    if (timings) stats["ms"] = clock.ms();
    out["stats"] = stats;
    out["deviations"] = r.bound.notes.deviations;
    if (r.bound.status != bound_status::partial) {
        out["wis"] = {{"vertices", r.wis.g.n()},
                      {"edges", r.wis.g.edge_count()},
                      {"k_card", r.wis.k_card},
                      {"k_weight", r.wis.k_weight},
                      {"trivial", r.wis.trivial}};
        if (r.bound.ss) out["wis"]["ceiling"] = wis_size_ceiling(*r.bound.ss, h.h());
        out["warnings"] = r.wis.warnings;
        if (!out_path.empty()) write_file(out_path, emit_wis(r.wis));
    }
    return out;
}

json write_gadget(const gadget_instance& inst, const std::string& out_path, const std::string& prov_path) {
    write_file(out_path, emit_graph(inst.g));
    write_file(prov_path.empty() ? out_path + ".prov" : prov_path, emit_provenance(inst.labels));
    return {{"vertices", inst.g.n()}, {"edges", inst.g.edge_count()}, {"k", inst.k}};
}

json realize_cmd(const std::string& interval_path, const std::string& arc_path, const std::string& fuzzy_path,
                 const std::string& out_path) {
    graph g;
    if (!interval_path.empty()) g = realize(parse_interval_model(read_file(interval_path), interval_path));
    else if (!arc_path.empty()) g = realize(parse_arc_model(read_file(arc_path), arc_path));
    else if (!fuzzy_path.empty()) g = realize(parse_fuzzy_model(read_file(fuzzy_path), fuzzy_path));
    else throw input_error("realize needs one of --interval-model, --arc-model, --fuzzy-model");
    write_file(out_path, emit_graph(g));
    return {{"vertices", g.n()}, {"edges", g.edge_count()}};
}

void model_options(CLI::App* app, std::string& iv, std::string& am, std::string& fm) {
    app->add_option("--interval-model", iv, "interval model (.im)");
    app->add_option("--arc-model", am, "arc model (.am)");
    app->add_option("--fuzzy-model", fm, "fuzzy arc model (.fam)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Induced graph matching toolkit", "igm"};
    // "--h" names the pattern, so help is long-form only.
    app.set_help_flag("--help", "print help");
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);

    solve_args sa;
    auto* solve_cmd = app.add_subcommand("solve", "decide whether k induced copies of H exist");
    solve_cmd->add_option("--graph", sa.graph_path, "host graph (.g)");
    solve_cmd->add_option("--h", sa.h_spec, "pattern (.g file or K<n>, P<n>, C<n>, S<n>)")->required();
    solve_cmd->add_option("-k", sa.k, "number of occurrences")->required();
    model_options(solve_cmd, sa.interval_path, sa.arc_path, sa.fuzzy_path);
    solve_cmd->add_option("--strip-structure", sa.ss_path, "strip-structure (.ss)");
    solve_cmd->add_option("--colorings", sa.colorings, "exhaustive, random or literal");
    solve_cmd->add_option("--trials", sa.trials, "colorings per base in random mode");
    solve_cmd->add_option("--seed", sa.seed, "random seed");
    solve_cmd->add_option("--base-cap", sa.base_cap, "largest h*k for base enumeration");
    solve_cmd->add_flag("--timings", sa.timings, "include wall-clock timings in stats");
    solve_cmd->add_option("--threads", sa.threads, "worker cap");

    std::string o_graph, o_h;
    std::optional<int> o_k;
    bool o_timings = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force answer");
    oracle_cmd->add_option("--graph", o_graph, "host graph (.g)")->required();
    oracle_cmd->add_option("--h", o_h, "pattern")->required();
    oracle_cmd->add_option("-k", o_k, "number of occurrences; omit for the maximum");
    oracle_cmd->add_flag("--timings", o_timings, "include wall-clock timings in stats");

    std::string v_iv, v_am, v_fm, v_ss, v_graph;
    auto* validate_cmd = app.add_subcommand("validate", "report model or strip-structure properties");
    model_options(validate_cmd, v_iv, v_am, v_fm);
    validate_cmd->add_option("--strip-structure", v_ss, "strip-structure (.ss)");
    validate_cmd->add_option("--graph", v_graph, "host graph, overriding the one named in the strip-structure");

    std::string k_graph, k_h, k_ss, k_out;
    int k_k = 1;
    bool k_timings = false;
    auto* kernel_cmd = app.add_subcommand("kernelize", "reduce to weighted independent set");
    kernel_cmd->add_option("--graph", k_graph, "host graph (.g)");
    kernel_cmd->add_option("--h", k_h, "complete pattern")->required();
    kernel_cmd->add_option("-k", k_k, "number of occurrences")->required();
    kernel_cmd->add_option("--strip-structure", k_ss, "strip-structure (.ss); default derives a line-graph structure");
    kernel_cmd->add_option("--out", k_out, "weighted independent set output (.wis)");
    kernel_cmd->add_flag("--timings", k_timings, "include wall-clock timings in stats");

    auto* gen_cmd = app.add_subcommand("gen", "hardness instance generators");
    gen_cmd->require_subcommand(1);
    std::string g_graph, g_colors, g_h, g_out, g_prov;
    int g_k = 0;
    auto* mcc = gen_cmd->add_subcommand("mcc-is", "multicolored clique to independent set");
    mcc->add_option("--graph", g_graph)->required();
    mcc->add_option("--colors", g_colors)->required();
    mcc->add_option("-k", g_k)->required();
    auto* blowup = gen_cmd->add_subcommand("blowup", "independent set to induced matching of a complete pattern");
    blowup->add_option("--graph", g_graph)->required();
    blowup->add_option("--h", g_h)->required();
    blowup->add_option("-k", g_k)->required();
    auto* triangle = gen_cmd->add_subcommand("triangle", "cubic independent set to triangle matching");
    triangle->add_option("--graph", g_graph)->required();
    triangle->add_option("-k", g_k)->required();
    for (auto* sub : {mcc, blowup, triangle}) {
        sub->add_option("--out", g_out, "output graph (.g)")->required();
        sub->add_option("--provenance", g_prov, "provenance output; default <out>.prov");
    }

    std::string r_iv, r_am, r_fm, r_out;
    auto* realize_sub = app.add_subcommand("realize", "write the graph of a model");
    model_options(realize_sub, r_iv, r_am, r_fm);
    realize_sub->add_option("--out", r_out, "output graph (.g)")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", e.what()}}.dump() << '\n';
        return exit_input;
    }

    try {
        json result;
        if (*solve_cmd) result = solve(sa);
        else if (*oracle_cmd) result = oracle(o_graph, o_h, o_k, o_timings);
        else if (*validate_cmd) result = validate(v_iv, v_am, v_fm, v_ss, v_graph);
        else if (*kernel_cmd) result = kernelize_cmd(k_graph, k_h, k_k, k_ss, k_out, k_timings);
        else if (*realize_sub) result = realize_cmd(r_iv, r_am, r_fm, r_out);
        else if (*mcc) {
            const graph g = load_graph(g_graph);
            const auto colors = parse_colors(read_file(g_colors), g.n(), g_colors);
            result = write_gadget(mcc_to_is_k14(g, colors, g_k), g_out, g_prov);
        } else if (*blowup) {
            result = write_gadget(is_to_igm_blowup(load_graph(g_graph), g_k, load_pattern(g_h)), g_out, g_prov);
        } else if (*triangle) {
            result = write_gadget(cubic_is_to_triangle_matching(load_graph(g_graph), g_k), g_out, g_prov);
        }
        out << result.dump() << '\n';
        return exit_ok;
    } catch (const size_limit_error& e) {
        err << json{{"error", e.what()}, {"kind", "size-limit"}}.dump() << '\n';
        return exit_size_limit;
    } catch (const input_error& e) {
        err << json{{"error", e.what()}, {"kind", "input"}}.dump() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        err << json{{"error", e.what()}, {"kind", "internal"}}.dump() << '\n';
        return exit_internal;
    }
}

}  // namespace igm
