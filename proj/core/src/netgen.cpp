#include "bufferless/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bufferless {

namespace {
constexpr int kRedrawCap = 10000;       // per-link rejection budget
constexpr std::size_t kMinTail = 100;   // samples required by the MLE fit
} // namespace

void validate(const GenParams& params) {
    const std::uint32_t m0 = params.effective_m0();
    if (params.m < 1) throw std::invalid_argument("GenParams: m must be >= 1");
    if (m0 < params.m + 1)
        throw std::invalid_argument("GenParams: m0 must be >= m+1");
    if (params.n < m0) throw std::invalid_argument("GenParams: N must be >= m0");
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw std::invalid_argument("GenParams: P must lie in [0,1]");
}

Graph price_generate(const GenParams& params, GenStats* stats) {
    validate(params);
    const std::uint32_t n = params.n;
    const std::uint32_t m0 = params.effective_m0();
    const std::uint32_t m = params.m;

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Graph g;
    g.adj.resize(n);

    // Seed clique as a complete digraph: every node is a target of the
    // other m0-1, so each label enters the target array m0-1 times.
    std::vector<std::uint32_t> arr;
    arr.reserve(static_cast<std::size_t>(m0) * (m0 - 1) +
                static_cast<std::size_t>(n - m0) * m);
    for (std::uint32_t i = 0; i < m0; ++i) {
        for (std::uint32_t j = i + 1; j < m0; ++j) g.add_edge(i, j);
        for (std::uint32_t j = 0; j < m0; ++j)
            if (j != i) arr.push_back(j);
    }

    std::uint64_t fallbacks = 0;
    std::vector<std::uint32_t> chosen;
    chosen.reserve(m);

    for (std::uint32_t u = m0; u < n; ++u) {
        chosen.clear();
        for (std::uint32_t link = 0; link < m; ++link) {
            constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
            std::uint32_t target = kNone;
            for (int attempt = 0; attempt < kRedrawCap; ++attempt) {
                std::uint32_t cand;
                if (unit(rng) < params.p) {
                    cand = arr[std::uniform_int_distribution<std::size_t>(0, arr.size() - 1)(rng)];
                } else {
                    // uniform over existing nodes; u itself does not exist yet
                    cand = std::uniform_int_distribution<std::uint32_t>(0, u - 1)(rng);
                }
                if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end()) {
                    target = cand;
                    break;
                }
            }
            if (target == kNone) {
                // redraw budget exhausted: uniform over the not-yet-chosen nodes
                std::vector<std::uint32_t> rest;
                rest.reserve(u - chosen.size());
                for (std::uint32_t v = 0; v < u; ++v)
                    if (std::find(chosen.begin(), chosen.end(), v) == chosen.end())
                        rest.push_back(v);
                target = rest[std::uniform_int_distribution<std::size_t>(0, rest.size() - 1)(rng)];
                ++fallbacks;
            }
            chosen.push_back(target);
        }
        for (std::uint32_t t : chosen) {
            g.add_edge(u, t);
            arr.push_back(t);
        }
    }

    if (stats) {
        stats->arr_length = arr.size();
        stats->fallback_links = fallbacks;
    }
    return g;
}

double gamma_to_p(double gamma) {
    if (!(gamma >= 2.0))
        throw std::invalid_argument("gamma_to_p: gamma must be >= 2 so that P <= 1");
    return 1.0 / (gamma - 1.0);
}

double fit_tail_exponent(std::span<const double> samples, double kmin) {
    if (!(kmin > 0.0)) throw std::invalid_argument("fit_tail_exponent: kmin must be > 0");
    std::size_t tail = 0;
    double log_sum = 0.0;
    for (double x : samples) {
        if (x >= kmin) {
            ++tail;
            log_sum += std::log(x / kmin);
        }
    }
    if (tail < kMinTail)
        throw std::runtime_error("fit_tail_exponent: only " + std::to_string(tail) +
                                 " samples >= kmin, need " + std::to_string(kMinTail));
    if (log_sum == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 + static_cast<double>(tail) / log_sum;
}

double fit_tail_exponent(const Graph& g, std::uint32_t kmin) {
    std::vector<double> degrees;
    degrees.reserve(g.node_count());
    for (std::uint32_t v = 0; v < g.node_count(); ++v)
        degrees.push_back(static_cast<double>(g.degree(v)));
    return fit_tail_exponent(degrees, static_cast<double>(kmin));
}

} // namespace bufferless
