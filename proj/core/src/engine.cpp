#include "bufferless/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace bufferless {

Simulation::Simulation(const Graph& g, const RoutingTable& table, const EngineParams& params)
    : g_(&g), table_(&table), params_(params), rng_(params.seed) {
    if (table.node_count() != g.node_count())
        throw std::invalid_argument("Simulation: routing table built for " +
                                    std::to_string(table.node_count()) + " nodes, graph has " +
                                    std::to_string(g.node_count()));
    if (g.node_count() < 2)
        throw std::invalid_argument("Simulation: need at least 2 nodes");
    if (params.steps < 1) throw std::invalid_argument("Simulation: T must be >= 1");
    if (params.warmup >= params.steps)
        throw std::invalid_argument("Simulation: warmup must be < T");
    if (!(params.rho >= 0.0)) throw std::invalid_argument("Simulation: rho must be >= 0");
    if (!(params.delivery_coefficient > 0.0))
        throw std::invalid_argument("Simulation: C must be > 0");

    const std::uint32_t n = g.node_count();
    capacity_.resize(n);
    cur_.resize(n);
    next_.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        // Queue holds at most C*k(v) packets; the 1e-9 nudge keeps decimal C
        // values like 0.3*10 from flooring one slot short.
        const double slots = std::floor(params.delivery_coefficient * g.degree(v) + 1e-9);
        const double clamped =
            std::min(slots, static_cast<double>(std::numeric_limits<std::uint32_t>::max()));
        capacity_[v] = static_cast<std::uint32_t>(std::max(1.0, clamped));
        const std::size_t reserve = std::min<std::size_t>(capacity_[v], 1024);
        cur_[v].reserve(reserve);
        next_[v].reserve(reserve);
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
}

bool Simulation::inject(std::uint32_t src, std::uint32_t dst) {
    if (src >= g_->node_count() || dst >= g_->node_count() || src == dst)
        throw std::invalid_argument("inject: bad src/dst");
    if (cur_[src].size() >= capacity_[src]) return false;
    cur_[src].push_back(Packet{next_packet_id_++, src, dst, step_, 0});
    if (measured(step_)) ++counts_.generated;
    return true;
}

void Simulation::insert_generated(std::uint32_t node) {
    const std::uint32_t n = g_->node_count();
    std::uint32_t dst = std::uniform_int_distribution<std::uint32_t>(0, n - 2)(rng_);
    if (dst >= node) ++dst;
    cur_[node].push_back(Packet{next_packet_id_++, node, dst, step_, 0});
    if (measured(step_)) ++counts_.generated;
}

void Simulation::generate_phase() {
    const double whole_d = std::floor(params_.rho);
    const auto whole = static_cast<std::uint64_t>(whole_d);
    const double frac = params_.rho - whole_d;
    const std::uint32_t n = g_->node_count();
    for (std::uint32_t v = 0; v < n; ++v) {
        auto& queue = cur_[v];
        std::uint64_t attempts = 0;
        while (attempts < whole && queue.size() < capacity_[v]) {
            insert_generated(v);
            ++attempts;
        }
        // fractional part: one extra packet with probability frac, skipped
        // entirely when the queue is already full (the node stops generating)
        if (frac > 0.0 && queue.size() < capacity_[v] &&
            std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < frac)
            insert_generated(v);
    }
}

void Simulation::forward_packet(Packet& pkt, std::uint32_t at) {
    const bool counted = measured(pkt.birth);
    const std::uint32_t dst = pkt.dst;

    const auto arrive = [&] {
        if (counted) {
            ++counts_.arrived;
            counts_.arrival_time_sum += step_ - pkt.birth + 1;
        }
    };

    const std::uint32_t preferred = table_->pick_next_hop(at, dst, rng_);
    if (preferred == dst) { // destination absorbs unconditionally
        arrive();
        return;
    }
    if (next_[preferred].size() < capacity_[preferred]) {
        next_[preferred].push_back(pkt);
        return;
    }

    // Preferred queue is full: probe the other neighbors in uniform random
    // order (partial Fisher-Yates) until one accepts the packet.
    const auto& nbrs = g_->adj[at];
    candidates_.assign(nbrs.begin(), nbrs.end());
    const std::size_t count = candidates_.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j =
            i + std::uniform_int_distribution<std::size_t>(0, count - 1 - i)(rng_);
        std::swap(candidates_[i], candidates_[j]);
        const std::uint32_t cand = candidates_[i];
        if (cand == preferred) continue;
        if (cand == dst) { // absorbed even when its queue is full
            ++pkt.deflections;
            if (counted) ++counts_.deflections;
            arrive();
            return;
        }
        if (next_[cand].size() < capacity_[cand]) {
            ++pkt.deflections;
            if (counted) ++counts_.deflections;
            next_[cand].push_back(pkt);
            return;
        }
    }
    if (counted) ++counts_.dropped; // every neighbor full
}

void Simulation::forward_phase(std::span<const std::uint32_t> order) {
    for (std::uint32_t at : order) {
        auto& queue = cur_[at];
        for (Packet& pkt : queue) forward_packet(pkt, at);
        queue.clear();
    }
}

void Simulation::finish_step() {
    std::swap(cur_, next_); // forwarded packets become next step's queues
    if (trace_) {
        *trace_ << step_ << "," << counts_.generated << "," << counts_.arrived << ","
                << counts_.dropped << "," << counts_.deflections << "," << in_flight() << "\n";
    }
    ++step_;
}

void Simulation::step() {
    if (step_ >= params_.steps) throw std::logic_error("step: run already finished");
    generate_phase();
    std::shuffle(order_.begin(), order_.end(), rng_);
    forward_phase(order_);
    finish_step();
}

void Simulation::step_with_order(std::span<const std::uint32_t> order) {
    if (step_ >= params_.steps) throw std::logic_error("step: run already finished");
    if (order.size() != g_->node_count())
        throw std::invalid_argument("step_with_order: order must cover every node");
    generate_phase();
    forward_phase(order);
    finish_step();
}

void Simulation::run() {
    while (step_ < params_.steps) step();
}

std::uint64_t Simulation::in_flight() const {
    std::uint64_t count = 0;
    for (const auto& queue : cur_)
        for (const Packet& pkt : queue)
            if (measured(pkt.birth)) ++count;
    return count;
}

RunLedger Simulation::ledger() const {
    RunLedger out = counts_;
    out.in_flight = in_flight();
    return out;
}

RunLedger run(const Graph& g, const RoutingTable& table, const EngineParams& params) {
    Simulation sim(g, table, params);
    sim.run();
    return sim.ledger();
}

} // namespace bufferless
