// Command-line front end: generate / route / simulate / sweep.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bufferless/config.hpp"
#include "bufferless/engine.hpp"
#include "bufferless/graph.hpp"
#include "bufferless/metrics.hpp"
#include "bufferless/netgen.hpp"
#include "bufferless/routing.hpp"
#include "bufferless/sweep.hpp"

namespace {

using namespace bufferless;

// --out wins; otherwise the default file name lands in $BUFFERLESS_OUT_DIR
// (or the working directory).
std::string resolve_out(const std::string& out_flag, const char* default_name) {
    if (!out_flag.empty()) return out_flag;
    if (const char* dir = std::getenv("BUFFERLESS_OUT_DIR"); dir && *dir)
        return std::string(dir) + "/" + default_name;
    return default_name;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool paper = false;
};

Config load_config(const CommonFlags& flags) {
    if (flags.config_path.empty())
        throw std::runtime_error("--config is required for this subcommand");
    return Config::parse_file(flags.config_path);
}

int cmd_generate(const CommonFlags& flags) {
    const Config cfg = load_config(flags);
    const std::uint64_t seed = flags.seed ? *flags.seed : cfg.get_u64_or("base_seed", 1);
    const GenParams params = gen_params_from(cfg, seed);
    GenStats stats;
    const Graph g = price_generate(params, &stats);
    const std::string path = resolve_out(flags.out_path, "graph.edges");
    save_edge_list(path, g, seed);
    std::cerr << "wrote " << path << " (" << g.node_count() << " nodes, " << g.edge_count()
              << " edges, <k>=" << g.average_degree() << ")\n";
    return 0;
}

int cmd_route(const CommonFlags& flags, const std::string& graph_path, double alpha) {
    const Graph g = load_edge_list(graph_path);
    validate_graph(g);
    const RoutingTable table = build_tables(g, alpha);
    const std::string path = resolve_out(flags.out_path, "table.txt");
    auto out = open_out(path);
    write_table_dump(out, table);
    std::cerr << "wrote " << path << "\n";
    return 0;
}

int cmd_simulate(const CommonFlags& flags, const std::string& graph_path,
                 const std::string& trace_path) {
    const Config cfg = load_config(flags);
    const RunConfig rc = run_config_from(cfg);
    const std::uint64_t base = flags.seed ? *flags.seed : cfg.get_u64_or("base_seed", 1);

    Graph g;
    if (!graph_path.empty()) {
        g = load_edge_list(graph_path);
        validate_graph(g);
    } else {
        const GenParams gp{rc.nodes, rc.m0, rc.m, rc.p, derive_seed(base, 0, 0, SeedLane::graph)};
        g = price_generate(gp);
    }
    const RoutingTable table = build_tables(g, rc.alpha);
    const EngineParams ep{rc.rho, rc.delivery_coefficient, rc.steps, rc.warmup,
                          derive_seed(base, 0, 0, SeedLane::engine)};

    Simulation sim(g, table, ep);
    std::ofstream trace;
    if (!trace_path.empty()) {
        trace = open_out(trace_path);
        trace << kTraceHeader << "\n";
        sim.set_trace(&trace);
    }
    sim.run();
    const MetricsReport report = make_report(sim.ledger());

    if (!flags.out_path.empty()) {
        auto out = open_out(flags.out_path);
        write_report_csv(out, report);
    } else {
        write_report_csv(std::cout, report);
    }
    return 0;
}

int cmd_sweep(const CommonFlags& flags) {
    const Config cfg = load_config(flags);
    ExperimentSpec spec = experiment_from(cfg);
    if (flags.seed) spec.base_seed = *flags.seed;
    if (flags.paper) spec.reps = 100;
    const std::vector<SweepRow> rows = run_sweep(spec);
    const std::string path = resolve_out(flags.out_path, "sweep.csv");
    auto out = open_out(path);
    write_sweep_csv(out, spec, rows);
    std::cerr << "wrote " << path << " (" << rows.size() << " points x " << spec.reps
              << " reps)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bufferless transmission simulator on scale-free networks"};
    app.require_subcommand(1);

    CommonFlags flags;

    const auto add_common = [&](CLI::App* cmd, bool with_config) {
        if (with_config)
            cmd->add_option("--config", flags.config_path, "experiment config file");
        cmd->add_option("--out", flags.out_path, "output path");
        cmd->add_option("--seed", flags.seed, "override the base seed");
    };

    auto* generate = app.add_subcommand("generate", "grow a network and write its edge list");
    add_common(generate, true);

    auto* route = app.add_subcommand("route", "build and dump a routing table");
    std::string route_graph;
    double route_alpha = 1.0;
    route->add_option("--graph", route_graph, "edge-list file")->required();
    route->add_option("--alpha", route_alpha, "routing control parameter");
    add_common(route, false);

    auto* simulate = app.add_subcommand("simulate", "one run, metrics as CSV on stdout");
    std::string sim_graph, sim_trace;
    simulate->add_option("--graph", sim_graph, "reuse an edge-list file instead of generating");
    simulate->add_option("--trace", sim_trace, "write a per-step counter trace to this file");
    add_common(simulate, true);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep, aggregated CSV");
    sweep->add_flag("--paper", flags.paper, "use 100 replications per point");
    add_common(sweep, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(flags);
        if (route->parsed()) return cmd_route(flags, route_graph, route_alpha);
        if (simulate->parsed()) return cmd_simulate(flags, sim_graph, sim_trace);
        if (sweep->parsed()) return cmd_sweep(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
