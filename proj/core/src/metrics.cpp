#include "bufferless/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bufferless {

void validate(const RunLedger& ledger) {
    if (ledger.generated != ledger.arrived + ledger.dropped + ledger.in_flight)
        throw std::runtime_error(
            "ledger integrity: generated=" + std::to_string(ledger.generated) +
            " != arrived+dropped+in_flight=" +
            std::to_string(ledger.arrived + ledger.dropped + ledger.in_flight));
}

double loss_rate(const RunLedger& ledger) {
    validate(ledger);
    if (ledger.generated == 0) return 0.0;
    return static_cast<double>(ledger.dropped) / static_cast<double>(ledger.generated);
}

double deflection_avg(const RunLedger& ledger) {
    validate(ledger);
    if (ledger.generated == 0) return 0.0;
    return static_cast<double>(ledger.deflections) / static_cast<double>(ledger.generated);
}

double avg_arrival_time(const RunLedger& ledger) {
    validate(ledger);
    if (ledger.arrived == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(ledger.arrival_time_sum) / static_cast<double>(ledger.arrived);
}

MetricsReport make_report(const RunLedger& ledger) {
    MetricsReport report;
    report.eta = loss_rate(ledger);
    report.omega = deflection_avg(ledger);
    report.t_a = avg_arrival_time(ledger);
    report.rates_defined = ledger.generated > 0;
    report.t_a_defined = ledger.arrived > 0;
    report.generated = ledger.generated;
    return report;
}

namespace {

Stat stat_of(const std::vector<double>& xs) {
    Stat s;
    if (xs.empty()) {
        s.mean = std::numeric_limits<double>::quiet_NaN();
        s.stddev = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double sq = 0.0;
        for (double x : xs) sq += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
    }
    return s;
}

} // namespace

Aggregate aggregate(std::span<const MetricsReport> reports) {
    if (reports.empty()) throw std::invalid_argument("aggregate: no reports");
    Aggregate agg;
    agg.reps = reports.size();
    std::vector<double> eta, omega, t_a, generated;
    eta.reserve(reports.size());
    omega.reserve(reports.size());
    t_a.reserve(reports.size());
    generated.reserve(reports.size());
    for (const MetricsReport& r : reports) {
        eta.push_back(r.eta);
        omega.push_back(r.omega);
        generated.push_back(static_cast<double>(r.generated));
        if (r.t_a_defined)
            t_a.push_back(r.t_a);
        else
            ++agg.t_a_excluded;
    }
    agg.eta = stat_of(eta);
    agg.omega = stat_of(omega);
    agg.t_a = stat_of(t_a);
    agg.generated = stat_of(generated);
    return agg;
}

} // namespace bufferless
