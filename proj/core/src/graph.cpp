#include "bufferless/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bufferless {

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adj) twice += nbrs.size();
    return twice / 2;
}

double Graph::average_degree() const {
    if (adj.empty()) return 0.0;
    return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(adj.size());
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
    if (u == v) throw std::invalid_argument("add_edge: self loop at node " + std::to_string(u));
    if (u >= adj.size() || v >= adj.size())
        throw std::invalid_argument("add_edge: node id out of range");
    if (has_edge(u, v))
        throw std::invalid_argument("add_edge: duplicate edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
    adj[u].push_back(v);
    adj[v].push_back(u);
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& nbrs = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const std::uint32_t other = adj[u].size() <= adj[v].size() ? v : u;
    return std::find(nbrs.begin(), nbrs.end(), other) != nbrs.end();
}

bool is_connected(const Graph& g) {
    const std::uint32_t n = g.node_count();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::uint32_t visited = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t w : g.adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == n;
}

void validate_graph(const Graph& g) {
    const std::uint32_t n = g.node_count();
    for (std::uint32_t v = 0; v < n; ++v) {
        std::vector<std::uint32_t> sorted = g.adj[v];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::runtime_error("graph: duplicate edge at node " + std::to_string(v));
        for (std::uint32_t w : sorted) {
            if (w >= n) throw std::runtime_error("graph: neighbor id out of range");
            if (w == v) throw std::runtime_error("graph: self loop at node " + std::to_string(v));
            const auto& back = g.adj[w];
            if (std::find(back.begin(), back.end(), v) == back.end())
                throw std::runtime_error("graph: asymmetric edge " + std::to_string(v) + "-" +
                                         std::to_string(w));
        }
    }
    if (!is_connected(g)) throw std::runtime_error("graph: not connected");
}

void write_edge_list(std::ostream& out, const Graph& g, std::uint64_t seed) {
    out << "# nodes=" << g.node_count() << " edges=" << g.edge_count() << " seed=" << seed
        << "\n";
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        std::vector<std::uint32_t> higher;
        for (std::uint32_t v : g.adj[u])
            if (v > u) higher.push_back(v);
        std::sort(higher.begin(), higher.end());
        for (std::uint32_t v : higher) out << u << " " << v << "\n";
    }
}

Graph read_edge_list(std::istream& in, std::uint64_t* seed_out) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("edge list: empty input");
    unsigned long long nodes = 0, edges = 0, seed = 0;
    if (std::sscanf(header.c_str(), "# nodes=%llu edges=%llu seed=%llu", &nodes, &edges, &seed) !=
        3)
        throw std::runtime_error("edge list: bad header line: " + header);
    Graph g;
    g.adj.resize(nodes);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::uint32_t u = 0, v = 0;
        if (!(ls >> u >> v)) throw std::runtime_error("edge list: bad edge line: " + line);
        g.add_edge(u, v);
        ++count;
    }
    if (count != edges)
        throw std::runtime_error("edge list: header says " + std::to_string(edges) +
                                 " edges, found " + std::to_string(count));
    if (seed_out) *seed_out = seed;
    return g;
}

void save_edge_list(const std::string& path, const Graph& g, std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_list(out, g, seed);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Graph load_edge_list(const std::string& path, std::uint64_t* seed_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_edge_list(in, seed_out);
}

} // namespace bufferless
