#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bufferless/sweep.hpp"

namespace bufferless {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat "key = value" document. '#' starts a comment, blank lines are
/// ignored, keys are case-sensitive. Typed getters throw ConfigError naming
/// the key.
class Config {
public:
    static Config parse(std::istream& in);
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;

    double get_double_or(const std::string& key, double fallback) const;
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

// Config keys understood by the loaders below:
//   N, m, k_avg, m0, gamma, P, rho, C, alpha, T, warmup,
//   reps, base_seed, regenerate_graph, sweep, values, threads
// m/k_avg and gamma/P are mutually exclusive pairs. Unknown keys are errors.

/// Fixed single-run parameters; requires N, m or k_avg, gamma or P.
RunConfig run_config_from(const Config& cfg);

/// Full sweep description; additionally requires sweep and values, and
/// rejects a fixed value for the swept parameter.
ExperimentSpec experiment_from(const Config& cfg);

/// Generator parameters only (N, m or k_avg, m0, gamma or P).
GenParams gen_params_from(const Config& cfg, std::uint64_t seed);

} // namespace bufferless
