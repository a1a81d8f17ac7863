#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "bufferless/graph.hpp"

namespace bufferless {

/// All-pairs minimum-cost table for degree-power routing. The cost of a path
/// sums k(v)^alpha over every on-path node except the last one, so alpha = 0
/// reduces to hop count. For each ordered pair the table keeps the minimum
/// cost and every neighbor that starts a minimum-cost path.
class RoutingTable {
public:
    RoutingTable() = default;

    double alpha() const { return alpha_; }
    std::uint32_t node_count() const { return n_; }

    double cost(std::uint32_t src, std::uint32_t dst) const {
        return cost_[index(src, dst)];
    }

    /// Optimal successors of src towards dst; empty exactly when src == dst.
    std::span<const std::uint32_t> next_hops(std::uint32_t src, std::uint32_t dst) const {
        const std::size_t i = index(src, dst);
        return {hops_.data() + offsets_[i], hops_.data() + offsets_[i + 1]};
    }

    /// Uniform draw from next_hops(at, dst). Throws std::logic_error if at == dst.
    std::uint32_t pick_next_hop(std::uint32_t at, std::uint32_t dst, std::mt19937_64& rng) const;

private:
    friend RoutingTable build_tables(const Graph& g, double alpha);

    std::size_t index(std::uint32_t src, std::uint32_t dst) const {
        return static_cast<std::size_t>(dst) * n_ + src;
    }

    std::uint32_t n_ = 0;
    double alpha_ = 0.0;
    std::vector<double> cost_;           // destination-major, n*n
    std::vector<std::uint64_t> offsets_; // n*n + 1
    std::vector<std::uint32_t> hops_;    // concatenated successor sets
};

/// Cost of an explicit path; every consecutive pair must be adjacent.
/// A single-node path costs 0.
double path_cost(const Graph& g, std::span<const std::uint32_t> path, double alpha);

/// One node-weighted shortest-path search per destination. Throws on a
/// disconnected graph, naming an unreachable pair.
RoutingTable build_tables(const Graph& g, double alpha);

std::uint32_t next_hop(const RoutingTable& table, std::uint32_t at, std::uint32_t dst,
                       std::mt19937_64& rng);

/// Average hop count of one sampled optimal path over all ordered pairs.
double mean_optimal_hops(const RoutingTable& table, std::mt19937_64& rng);

/// Audit dump: one "s d cost h1,h2,..." line per ordered pair with s != d.
void write_table_dump(std::ostream& out, const RoutingTable& table);

} // namespace bufferless
