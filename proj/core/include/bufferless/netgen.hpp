#pragma once

#include <cstdint>
#include <span>

#include "bufferless/graph.hpp"

namespace bufferless {

/// Price-model generation parameters. m0 == 0 selects the default seed-clique
/// size m+1, the smallest clique that offers m distinct attachment targets.
struct GenParams {
    std::uint32_t n = 0;    ///< final node count N
    std::uint32_t m0 = 0;   ///< seed clique size (0 = m+1)
    std::uint32_t m = 0;    ///< links added per new node
    double p = 0.5;         ///< preferential-attachment probability in [0,1]
    std::uint64_t seed = 0;

    std::uint32_t effective_m0() const { return m0 == 0 ? m + 1 : m0; }
};

/// Throws std::invalid_argument naming the offending field.
void validate(const GenParams& params);

struct GenStats {
    std::size_t arr_length = 0;        ///< target array size after growth
    std::uint64_t fallback_links = 0;  ///< links placed by the redraw-cap fallback
};

/// Grows a scale-free graph: seed clique of m0 nodes, then one node per step
/// with m links, each target drawn from the target-label array with
/// probability p and uniformly from the existing nodes otherwise. Repeated
/// targets for the same new node are redrawn. Link directions are discarded.
Graph price_generate(const GenParams& params, GenStats* stats = nullptr);

/// Inverts gamma = (1+P)/P. Requires gamma >= 2 so that P <= 1.
double gamma_to_p(double gamma);

/// Continuous maximum-likelihood tail exponent 1 + n / sum(ln(x/kmin)) over
/// the samples >= kmin. Needs at least 100 qualifying samples; returns +inf
/// when every qualifying sample equals kmin.
double fit_tail_exponent(std::span<const double> samples, double kmin);
double fit_tail_exponent(const Graph& g, std::uint32_t kmin);

} // namespace bufferless
