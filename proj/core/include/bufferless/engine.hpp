#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "bufferless/graph.hpp"
#include "bufferless/routing.hpp"

namespace bufferless {

struct EngineParams {
    double rho = 0.0;                  ///< packets generated per node per step
    double delivery_coefficient = 1.0; ///< C; queue capacity is max(1, floor(C*k))
    std::uint64_t steps = 1;           ///< run length T
    std::uint64_t warmup = 0;          ///< packets born before this step are not measured
    std::uint64_t seed = 0;
};

struct Packet {
    std::uint64_t id;
    std::uint32_t src;
    std::uint32_t dst;
    std::uint64_t birth;
    std::uint32_t deflections;
};

/// Counter set over the measured window. Conservation holds at every step
/// boundary: generated == arrived + dropped + in_flight.
struct RunLedger {
    std::uint64_t generated = 0;        // n_g
    std::uint64_t arrived = 0;          // n_a
    std::uint64_t dropped = 0;          // n_l, arrivals excluded
    std::uint64_t deflections = 0;      // n_d
    std::uint64_t arrival_time_sum = 0; // steps, arrived packets only
    std::uint64_t in_flight = 0;        // packets still queued
};

/// Discrete-time bufferless transmission. Each step generates packets into
/// the per-node delivery queues (stalling on full queues) and then forwards
/// every queued packet one hop: to the routing-preferred neighbor if its
/// next-step queue has room, otherwise to a random other neighbor with room
/// (a deflection), otherwise the packet is dropped. A hop onto the packet's
/// destination absorbs it immediately and never occupies a queue slot.
class Simulation {
public:
    Simulation(const Graph& g, const RoutingTable& table, const EngineParams& params);

    /// One step: generation phase, then forwarding with a fresh random node order.
    void step();

    /// Same as step() but with a caller-fixed forwarding order over all nodes.
    void step_with_order(std::span<const std::uint32_t> order);

    /// Runs the remaining steps up to params.steps.
    void run();

    /// Places a packet in src's current queue, as if generated this step.
    /// Returns false (and counts nothing) when the queue is full.
    bool inject(std::uint32_t src, std::uint32_t dst);

    std::uint64_t current_step() const { return step_; }
    std::uint32_t capacity(std::uint32_t node) const { return capacity_[node]; }
    std::size_t queue_size(std::uint32_t node) const { return cur_[node].size(); }

    /// Measured packets currently queued (counted by scanning the queues).
    std::uint64_t in_flight() const;

    /// Counters with in_flight refreshed from the queues.
    RunLedger ledger() const;

    /// Per-step cumulative counter trace as CSV; null disables.
    void set_trace(std::ostream* trace) { trace_ = trace; }

private:
    bool measured(std::uint64_t birth) const { return birth >= params_.warmup; }
    void generate_phase();
    void forward_phase(std::span<const std::uint32_t> order);
    void forward_packet(Packet& pkt, std::uint32_t at);
    void insert_generated(std::uint32_t node);
    void finish_step();

    const Graph* g_;
    const RoutingTable* table_;
    EngineParams params_;
    std::mt19937_64 rng_;
    std::vector<std::uint32_t> capacity_;
    std::vector<std::vector<Packet>> cur_;  // this step's sendable packets
    std::vector<std::vector<Packet>> next_; // filled during forwarding
    RunLedger counts_;
    std::uint64_t step_ = 0;
    std::uint64_t next_packet_id_ = 0;
    std::vector<std::uint32_t> order_;      // scratch
    std::vector<std::uint32_t> candidates_; // scratch
    std::ostream* trace_ = nullptr;
};

/// Runs a full simulation and returns the final ledger.
RunLedger run(const Graph& g, const RoutingTable& table, const EngineParams& params);

/// Header for the per-step trace rows.
inline constexpr const char* kTraceHeader = "step,generated,arrived,dropped,deflections,in_flight";

} // namespace bufferless
