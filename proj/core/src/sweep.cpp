#include "bufferless/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "bufferless/routing.hpp"

namespace bufferless {

std::string_view to_string(SweepParam p) {
    switch (p) {
        case SweepParam::rho: return "rho";
        case SweepParam::delivery_coefficient: return "C";
        case SweepParam::avg_degree: return "k_avg";
        case SweepParam::gamma: return "gamma";
        case SweepParam::nodes: return "N";
        case SweepParam::alpha: return "alpha";
    }
    return "?";
}

SweepParam sweep_param_from_string(std::string_view name) {
    if (name == "rho") return SweepParam::rho;
    if (name == "C") return SweepParam::delivery_coefficient;
    if (name == "k_avg") return SweepParam::avg_degree;
    if (name == "gamma") return SweepParam::gamma;
    if (name == "N") return SweepParam::nodes;
    if (name == "alpha") return SweepParam::alpha;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected rho, C, k_avg, gamma, N or alpha)");
}

namespace {

std::uint32_t integral_value(double v, const char* what) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 4e9)
        throw std::invalid_argument(std::string(what) + " must be a nonnegative integer, got " +
                                    std::to_string(v));
    return static_cast<std::uint32_t>(v);
}

} // namespace

RunConfig apply_swept(RunConfig base, SweepParam param, double value) {
    switch (param) {
        case SweepParam::rho:
            if (!(value >= 0.0)) throw std::invalid_argument("swept rho must be >= 0");
            base.rho = value;
            break;
        case SweepParam::delivery_coefficient:
            if (!(value > 0.0)) throw std::invalid_argument("swept C must be > 0");
            base.delivery_coefficient = value;
            break;
        case SweepParam::avg_degree: {
            const std::uint32_t k = integral_value(value, "swept k_avg");
            if (k < 2 || k % 2 != 0)
                throw std::invalid_argument("swept k_avg must be an even integer >= 2");
            base.m = k / 2;
            break;
        }
        case SweepParam::gamma:
            base.p = gamma_to_p(value);
            break;
        case SweepParam::nodes:
            base.nodes = integral_value(value, "swept N");
            break;
        case SweepParam::alpha:
            if (!std::isfinite(value)) throw std::invalid_argument("swept alpha must be finite");
            base.alpha = value;
            break;
    }
    return base;
}

void validate(const ExperimentSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw std::invalid_argument("sweep: values must be strictly increasing");
    if (spec.reps < 1) throw std::invalid_argument("sweep: reps must be >= 1");
    for (double v : spec.values) (void)apply_swept(spec.fixed, spec.swept, v);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t rep,
                          SeedLane lane) {
    std::uint64_t h = splitmix64(base);
    h = splitmix64(h ^ point);
    h = splitmix64(h ^ rep);
    return splitmix64(h ^ static_cast<std::uint64_t>(lane));
}

MetricsReport run_replication(const RunConfig& rc, std::uint64_t graph_seed,
                              std::uint64_t engine_seed) {
    GenParams gp{rc.nodes, rc.m0, rc.m, rc.p, graph_seed};
    const Graph g = price_generate(gp);
    const RoutingTable table = build_tables(g, rc.alpha);
    EngineParams ep{rc.rho, rc.delivery_coefficient, rc.steps, rc.warmup, engine_seed};
    return make_report(run(g, table, ep));
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
    validate(spec);
    const std::size_t points = spec.values.size();
    const std::size_t reps = spec.reps;

    std::vector<RunConfig> configs;
    configs.reserve(points);
    for (double v : spec.values) configs.push_back(apply_swept(spec.fixed, spec.swept, v));

    // With a pinned graph, one instance per point is shared by its reps.
    std::vector<Graph> shared_graph(spec.regenerate_graph ? 0 : points);
    std::vector<RoutingTable> shared_table(spec.regenerate_graph ? 0 : points);
    if (!spec.regenerate_graph) {
        for (std::size_t i = 0; i < points; ++i) {
            const RunConfig& rc = configs[i];
            GenParams gp{rc.nodes, rc.m0, rc.m, rc.p,
                         derive_seed(spec.base_seed, i, 0, SeedLane::graph)};
            shared_graph[i] = price_generate(gp);
            shared_table[i] = build_tables(shared_graph[i], rc.alpha);
        }
    }

    std::vector<std::vector<MetricsReport>> reports(points,
                                                    std::vector<MetricsReport>(reps));
    const std::size_t tasks = points * reps;
    unsigned workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));

    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&] {
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= tasks) return;
            const std::size_t point = t / reps;
            const std::size_t rep = t % reps;
            try {
                const RunConfig& rc = configs[point];
                const std::uint64_t eseed = derive_seed(spec.base_seed, point, rep, SeedLane::engine);
                if (spec.regenerate_graph) {
                    const std::uint64_t gseed =
                        derive_seed(spec.base_seed, point, rep, SeedLane::graph);
                    reports[point][rep] = run_replication(rc, gseed, eseed);
                } else {
                    EngineParams ep{rc.rho, rc.delivery_coefficient, rc.steps, rc.warmup, eseed};
                    reports[point][rep] =
                        make_report(run(shared_graph[point], shared_table[point], ep));
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::make_exception_ptr(std::runtime_error(
                        "sweep point " + std::to_string(point) + " (value " +
                        std::to_string(spec.values[point]) + "), replication " +
                        std::to_string(rep) + ": " + e.what()));
                cursor.store(tasks); // stop handing out work
                return;
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<SweepRow> rows;
    rows.reserve(points);
    for (std::size_t i = 0; i < points; ++i)
        rows.push_back(SweepRow{spec.values[i], aggregate(reports[i])});
    return rows;
}

namespace {

void put_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf;
}

} // namespace

void write_sweep_csv(std::ostream& out, const ExperimentSpec& spec,
                     std::span<const SweepRow> rows) {
    out << kSweepCsvHeader << "\n";
    for (const SweepRow& row : rows) {
        out << to_string(spec.swept) << ",";
        put_double(out, row.value);
        for (double v : {row.agg.omega.mean, row.agg.omega.stddev, row.agg.eta.mean,
                         row.agg.eta.stddev, row.agg.t_a.mean, row.agg.t_a.stddev,
                         row.agg.generated.mean}) {
            out << ",";
            put_double(out, v);
        }
        out << "," << row.agg.reps << "\n";
    }
}

void write_report_csv(std::ostream& out, const MetricsReport& report) {
    out << "eta,omega,ta,ng\n";
    put_double(out, report.eta);
    out << ",";
    put_double(out, report.omega);
    out << ",";
    put_double(out, report.t_a);
    out << "," << report.generated << "\n";
}

} // namespace bufferless
