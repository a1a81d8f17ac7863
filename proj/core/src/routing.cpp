#include "bufferless/routing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace bufferless {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// k^alpha, computed by repeated multiplication for integral alpha so that
// equal-cost paths compare exactly equal.
double degree_power(std::uint32_t k, double alpha) {
    const double r = std::round(alpha);
    if (alpha == r && std::abs(r) <= 64.0) {
        double base = static_cast<double>(k);
        long e = static_cast<long>(r);
        const bool inv = e < 0;
        e = std::abs(e);
        double acc = 1.0;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return inv ? 1.0 / acc : acc;
    }
    return std::pow(static_cast<double>(k), alpha);
}

bool is_integral(double alpha) { return alpha == std::round(alpha); }

} // namespace

std::uint32_t RoutingTable::pick_next_hop(std::uint32_t at, std::uint32_t dst,
                                          std::mt19937_64& rng) const {
    if (at == dst) throw std::logic_error("pick_next_hop: packet already at destination");
    const auto hops = next_hops(at, dst);
    if (hops.size() == 1) return hops[0];
    return hops[std::uniform_int_distribution<std::size_t>(0, hops.size() - 1)(rng)];
}

double path_cost(const Graph& g, std::span<const std::uint32_t> path, double alpha) {
    if (path.empty()) throw std::invalid_argument("path_cost: empty path");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1]))
            throw std::invalid_argument("path_cost: nodes " + std::to_string(path[i]) + " and " +
                                        std::to_string(path[i + 1]) + " are not adjacent");
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) cost += degree_power(g.degree(path[i]), alpha);
    return cost;
}

RoutingTable build_tables(const Graph& g, double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("build_tables: alpha must be finite");
    const std::uint32_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("build_tables: empty graph");

    RoutingTable table;
    table.n_ = n;
    table.alpha_ = alpha;
    table.cost_.assign(static_cast<std::size_t>(n) * n, kInf);
    table.offsets_.assign(static_cast<std::size_t>(n) * n + 1, 0);

    std::vector<double> weight(n); // cost contributed by leaving each node
    for (std::uint32_t v = 0; v < n; ++v) weight[v] = degree_power(g.degree(v), alpha);

    const double tie_tol = is_integral(alpha) ? 0.0 : 1e-9;

    std::vector<double> dist(n);
    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

    for (std::uint32_t dst = 0; dst < n; ++dst) {
        std::fill(dist.begin(), dist.end(), kInf);
        dist[dst] = 0.0;
        frontier.emplace(0.0, dst);
        while (!frontier.empty()) {
            const auto [d, x] = frontier.top();
            frontier.pop();
            if (d > dist[x]) continue;
            for (std::uint32_t y : g.adj[x]) {
                // dist accumulates the full path cost from y to dst,
                // including y's own term and excluding dst's.
                const double cand = weight[y] + d;
                if (cand < dist[y]) {
                    dist[y] = cand;
                    frontier.emplace(cand, y);
                }
            }
        }

        const std::size_t row = static_cast<std::size_t>(dst) * n;
        for (std::uint32_t s = 0; s < n; ++s) {
            if (dist[s] == kInf)
                throw std::runtime_error("build_tables: node " + std::to_string(s) +
                                         " cannot reach node " + std::to_string(dst) +
                                         " (graph disconnected)");
            table.cost_[row + s] = dist[s];
        }
        for (std::uint32_t s = 0; s < n; ++s) {
            table.offsets_[row + s] = table.hops_.size();
            if (s == dst) continue;
            double best = kInf;
            for (std::uint32_t v : g.adj[s]) best = std::min(best, dist[v]);
            const double bound = best + tie_tol * best;
            for (std::uint32_t v : g.adj[s])
                if (dist[v] <= bound) table.hops_.push_back(v);
        }
    }
    table.offsets_.back() = table.hops_.size();
    return table;
}

std::uint32_t next_hop(const RoutingTable& table, std::uint32_t at, std::uint32_t dst,
                       std::mt19937_64& rng) {
    return table.pick_next_hop(at, dst, rng);
}

double mean_optimal_hops(const RoutingTable& table, std::mt19937_64& rng) {
    const std::uint32_t n = table.node_count();
    if (n < 2) throw std::invalid_argument("mean_optimal_hops: need at least 2 nodes");
    std::uint64_t hop_sum = 0;
    for (std::uint32_t d = 0; d < n; ++d) {
        for (std::uint32_t s = 0; s < n; ++s) {
            if (s == d) continue;
            std::uint32_t at = s;
            std::uint64_t hops = 0;
            while (at != d) {
                at = table.pick_next_hop(at, d, rng);
                if (++hops >= n)
                    throw std::logic_error("mean_optimal_hops: optimal walk did not terminate");
            }
            hop_sum += hops;
        }
    }
    return static_cast<double>(hop_sum) /
           (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
}

void write_table_dump(std::ostream& out, const RoutingTable& table) {
    const std::uint32_t n = table.node_count();
    char buf[32];
    for (std::uint32_t s = 0; s < n; ++s) {
        for (std::uint32_t d = 0; d < n; ++d) {
            if (s == d) continue;
            std::snprintf(buf, sizeof buf, "%.12g", table.cost(s, d));
            out << s << " " << d << " " << buf << " ";
            const auto hops = table.next_hops(s, d);
            for (std::size_t i = 0; i < hops.size(); ++i) {
                if (i) out << ",";
                out << hops[i];
            }
            out << "\n";
        }
    }
}

} // namespace bufferless
