#include "bufferless/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace bufferless {

namespace {

std::string trim(std::string_view s) {
    const auto* b = s.data();
    const auto* e = s.data() + s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
    return std::string(b, e);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "N",    "m",      "k_avg",     "m0",    "gamma",  "P",
        "rho",  "C",      "alpha",     "T",     "warmup", "reps",
        "base_seed", "regenerate_graph", "sweep", "values", "threads",
    };
    return keys;
}

} // namespace

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.kv_.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        cfg.kv_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse(in);
}

Config Config::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string Config::get_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("config: missing required key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string raw = get_string(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + raw + "'");
    }
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string raw = get_string(key);
    std::uint64_t v = 0;
    const auto* first = raw.data();
    const auto* last = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config: key '" + key + "' is not a nonnegative integer: '" + raw +
                          "'");
    return v;
}

bool Config::get_bool(const std::string& key) const {
    std::string raw = get_string(key);
    std::transform(raw.begin(), raw.end(), raw.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (raw == "true" || raw == "1" || raw == "on" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "off" || raw == "no") return false;
    throw ConfigError("config: key '" + key + "' is not a boolean: '" + raw + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const std::string raw = get_string(key);
    std::vector<double> out;
    std::string item;
    std::istringstream stream(raw);
    while (std::getline(stream, item, ',')) {
        const std::string t = trim(item);
        if (t.empty())
            throw ConfigError("config: key '" + key + "' has an empty list element");
        try {
            std::size_t used = 0;
            out.push_back(std::stod(t, &used));
            if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' has a non-numeric element: '" + t + "'");
        }
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' is an empty list");
    return out;
}

double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::uint64_t Config::get_u64_or(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? get_u64(key) : fallback;
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

namespace {

void reject_unknown_keys(const Config& cfg) {
    for (const auto& [key, value] : cfg.entries())
        if (!known_keys().count(key))
            throw ConfigError("config: unknown key '" + key + "'");
}

// Resolves the m/k_avg pair; `required` controls whether absence is an error.
std::uint32_t resolve_m(const Config& cfg, bool required) {
    if (cfg.has("m") && cfg.has("k_avg"))
        throw ConfigError("config: keys 'm' and 'k_avg' are mutually exclusive");
    if (cfg.has("m")) {
        const auto m = cfg.get_u64("m");
        if (m < 1) throw ConfigError("config: key 'm' must be >= 1");
        return static_cast<std::uint32_t>(m);
    }
    if (cfg.has("k_avg")) {
        const auto k = cfg.get_u64("k_avg");
        if (k < 2 || k % 2 != 0)
            throw ConfigError("config: key 'k_avg' must be an even integer >= 2 (k_avg = 2m)");
        return static_cast<std::uint32_t>(k / 2);
    }
    if (required) throw ConfigError("config: missing required key 'm' (or 'k_avg')");
    return 0;
}

// Resolves the gamma/P pair into the preferential probability.
double resolve_p(const Config& cfg, bool required) {
    if (cfg.has("gamma") && cfg.has("P"))
        throw ConfigError("config: keys 'gamma' and 'P' are mutually exclusive");
    if (cfg.has("gamma")) {
        try {
            return gamma_to_p(cfg.get_double("gamma"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("config: key 'gamma': " + std::string(e.what()));
        }
    }
    if (cfg.has("P")) {
        const double p = cfg.get_double("P");
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("config: key 'P' must lie in [0,1]");
        return p;
    }
    if (required) throw ConfigError("config: missing required key 'gamma' (or 'P')");
    return -1.0;
}

RunConfig fixed_from(const Config& cfg, const std::string& swept_name) {
    RunConfig rc;
    const auto sweeps = [&](const char* name) { return swept_name == name; };

    if (sweeps("N")) {
        if (cfg.has("N")) throw ConfigError("config: key 'N' is fixed but also swept");
    } else {
        rc.nodes = static_cast<std::uint32_t>(cfg.get_u64("N"));
    }

    if (sweeps("k_avg")) {
        if (cfg.has("m") || cfg.has("k_avg"))
            throw ConfigError("config: key 'm'/'k_avg' is fixed but also swept");
    } else {
        rc.m = resolve_m(cfg, /*required=*/true);
    }

    if (sweeps("gamma")) {
        if (cfg.has("gamma") || cfg.has("P"))
            throw ConfigError("config: key 'gamma'/'P' is fixed but also swept");
    } else {
        rc.p = resolve_p(cfg, /*required=*/true);
    }

    if (sweeps("rho")) {
        if (cfg.has("rho")) throw ConfigError("config: key 'rho' is fixed but also swept");
    } else {
        rc.rho = cfg.get_double("rho");
        if (!(rc.rho >= 0.0)) throw ConfigError("config: key 'rho' must be >= 0");
    }

    if (sweeps("C")) {
        if (cfg.has("C")) throw ConfigError("config: key 'C' is fixed but also swept");
    } else {
        rc.delivery_coefficient = cfg.get_double_or("C", 1.0);
        if (!(rc.delivery_coefficient > 0.0))
            throw ConfigError("config: key 'C' must be > 0");
    }

    if (sweeps("alpha")) {
        if (cfg.has("alpha")) throw ConfigError("config: key 'alpha' is fixed but also swept");
    } else {
        rc.alpha = cfg.get_double_or("alpha", 1.0);
    }

    rc.m0 = static_cast<std::uint32_t>(cfg.get_u64_or("m0", 0));
    rc.steps = cfg.get_u64_or("T", 1000);
    if (rc.steps < 1) throw ConfigError("config: key 'T' must be >= 1");
    rc.warmup = cfg.get_u64_or("warmup", 0);
    if (rc.warmup >= rc.steps) throw ConfigError("config: key 'warmup' must be < T");
    return rc;
}

} // namespace

RunConfig run_config_from(const Config& cfg) {
    reject_unknown_keys(cfg);
    return fixed_from(cfg, /*swept_name=*/"");
}

ExperimentSpec experiment_from(const Config& cfg) {
    reject_unknown_keys(cfg);
    ExperimentSpec spec;
    const std::string swept_name = cfg.get_string("sweep");
    try {
        spec.swept = sweep_param_from_string(swept_name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: key 'sweep': " + std::string(e.what()));
    }
    spec.fixed = fixed_from(cfg, swept_name);
    spec.values = cfg.get_double_list("values");
    spec.reps = static_cast<std::uint32_t>(cfg.get_u64_or("reps", 20));
    spec.base_seed = cfg.get_u64_or("base_seed", 1);
    spec.regenerate_graph = cfg.get_bool_or("regenerate_graph", true);
    spec.threads = static_cast<unsigned>(cfg.get_u64_or("threads", 0));
    try {
        validate(spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return spec;
}

GenParams gen_params_from(const Config& cfg, std::uint64_t seed) {
    reject_unknown_keys(cfg);
    GenParams gp;
    gp.n = static_cast<std::uint32_t>(cfg.get_u64("N"));
    gp.m = resolve_m(cfg, /*required=*/true);
    gp.m0 = static_cast<std::uint32_t>(cfg.get_u64_or("m0", 0));
    gp.p = resolve_p(cfg, /*required=*/true);
    gp.seed = seed;
    try {
        validate(gp);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return gp;
}

} // namespace bufferless
