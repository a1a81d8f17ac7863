#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bufferless {

/// Undirected simple graph stored as adjacency lists, node ids 0..n-1.
struct Graph {
    std::vector<std::vector<std::uint32_t>> adj;

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(adj.size()); }
    std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(adj[v].size()); }

    std::size_t edge_count() const;
    double average_degree() const;

    /// Adds u-v to both adjacency lists. Rejects self loops and duplicates.
    void add_edge(std::uint32_t u, std::uint32_t v);
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj[v]; }
};

bool is_connected(const Graph& g);

/// Throws std::runtime_error unless the graph is symmetric, simple and connected.
void validate_graph(const Graph& g);

// Edge-list file format: a "# nodes=N edges=E seed=S" header line followed by
// one "u v" line per edge (u < v), ascending by first endpoint.
void write_edge_list(std::ostream& out, const Graph& g, std::uint64_t seed);
Graph read_edge_list(std::istream& in, std::uint64_t* seed_out = nullptr);

void save_edge_list(const std::string& path, const Graph& g, std::uint64_t seed);
Graph load_edge_list(const std::string& path, std::uint64_t* seed_out = nullptr);

} // namespace bufferless
