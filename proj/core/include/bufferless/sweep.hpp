#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bufferless/metrics.hpp"
#include "bufferless/netgen.hpp"

namespace bufferless {

/// Full parameter set of one simulation pipeline (generate, route, transmit).
struct RunConfig {
    std::uint32_t nodes = 0; ///< N
    std::uint32_t m = 0;     ///< links per new node, average degree / 2
    std::uint32_t m0 = 0;    ///< seed clique size (0 = m+1)
    double p = 0.5;          ///< preferential probability (resolved from gamma)
    double rho = 0.0;
    double delivery_coefficient = 1.0;
    double alpha = 1.0;
    std::uint64_t steps = 1000;
    std::uint64_t warmup = 0;
};

enum class SweepParam { rho, delivery_coefficient, avg_degree, gamma, nodes, alpha };

std::string_view to_string(SweepParam p);
SweepParam sweep_param_from_string(std::string_view name);

/// Returns base with the swept parameter replaced by value. Validates that
/// value is usable (integral N, even integral average degree, gamma >= 2, ...).
RunConfig apply_swept(RunConfig base, SweepParam param, double value);

struct ExperimentSpec {
    RunConfig fixed;
    SweepParam swept = SweepParam::rho;
    std::vector<double> values; ///< nonempty, strictly increasing
    std::uint32_t reps = 20;
    std::uint64_t base_seed = 1;
    bool regenerate_graph = true; ///< fresh graph per replication
    unsigned threads = 0;         ///< 0 = hardware concurrency
};

void validate(const ExperimentSpec& spec);

struct SweepRow {
    double value = 0.0;
    Aggregate agg;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class SeedLane : std::uint64_t { graph = 1, engine = 2, measure = 3 };

/// Pure function of its arguments; replications never share an RNG stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t rep,
                          SeedLane lane);

/// One generate -> route -> transmit -> measure pipeline.
MetricsReport run_replication(const RunConfig& rc, std::uint64_t graph_seed,
                              std::uint64_t engine_seed);

/// Runs reps replications per swept value, replications fanned out over
/// threads, and reduces each point with aggregate(). Results do not depend on
/// scheduling; a failed replication aborts with the point identified.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec);

inline constexpr const char* kSweepCsvHeader =
    "swept_name,swept_value,omega_mean,omega_std,eta_mean,eta_std,ta_mean,ta_std,ng_mean,reps";

void write_sweep_csv(std::ostream& out, const ExperimentSpec& spec,
                     std::span<const SweepRow> rows);

/// One-row CSV for a single report ("eta,omega,ta,ng" header).
void write_report_csv(std::ostream& out, const MetricsReport& report);

} // namespace bufferless
