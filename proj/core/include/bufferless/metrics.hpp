#pragma once

#include <cstdint>
#include <span>

#include "bufferless/engine.hpp"

namespace bufferless {

/// The three performance measures of one run. eta and omega fall back to 0
/// with rates_defined == false when nothing was generated; t_a is NaN with
/// t_a_defined == false when nothing arrived.
struct MetricsReport {
    double eta = 0.0;    ///< dropped / generated
    double omega = 0.0;  ///< deflections / generated
    double t_a = 0.0;    ///< arrival_time_sum / arrived
    bool rates_defined = false;
    bool t_a_defined = false;
    std::uint64_t generated = 0;
};

/// Throws std::runtime_error when the ledger violates conservation.
void validate(const RunLedger& ledger);

double loss_rate(const RunLedger& ledger);
double deflection_avg(const RunLedger& ledger);
/// NaN when no packet arrived.
double avg_arrival_time(const RunLedger& ledger);

MetricsReport make_report(const RunLedger& ledger);

struct Stat {
    double mean = 0.0;
    double stddev = 0.0; ///< sample standard deviation, 0 for a single value
};

struct Aggregate {
    std::size_t reps = 0;
    Stat eta;
    Stat omega;
    Stat t_a;
    Stat generated;
    std::size_t t_a_excluded = 0; ///< reports with undefined t_a, left out of t_a
};

/// Uniform mean and sample standard deviation over replications.
/// Throws std::invalid_argument on an empty sequence.
Aggregate aggregate(std::span<const MetricsReport> reports);

} // namespace bufferless
