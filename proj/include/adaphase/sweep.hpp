#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "adaphase/controller.hpp"
#include "adaphase/ensemble.hpp"
#include "adaphase/errors.hpp"
#include "adaphase/schedule.hpp"

namespace adaphase {

/// Parameter grid for a Monte Carlo sweep: one result row per
/// (policy, contrast, gamma, N) tuple.
struct SweepConfig {
    int64_t n_min = 4;
    int64_t n_max = 9;
    std::vector<RepetitionPolicy> policies{FixedRepetitions{2}};
    std::vector<double> contrasts{1.0};
    std::vector<double> gammas{0.0};
    int64_t trials = 1000;
    uint64_t seed = 0;
    bool random_phase = true;
    double fixed_phase = 0.0;
    std::string output_path;

    bool operator==(const SweepConfig&) const = default;
};

struct SweepRow {
    int64_t n = 0;
    RepetitionPolicy policy = FixedRepetitions{1};
    double contrast = 1.0;
    double gamma = 0.0;
    int64_t total_time = 0;
    double v_h = 0.0;
    double std_error = 0.0;
    int64_t trials = 0;    // configured trials; used = trials - excluded
    int64_t excluded = 0;  // episodes with an undefined estimate
    uint64_t seed = 0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
};

namespace detail {

inline void run_indexed(int64_t count, int64_t threads, const std::function<void(int64_t)>& fn) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int64_t>(hw);
    }
    if (threads == 1 || count < 2) {
        for (int64_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    const int64_t workers = std::min(threads, count);
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<size_t>(workers));
    for (int64_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&fn, w, workers, count] {
            for (int64_t i = w; i < count; i += workers) {
                fn(i);
            }
        }));
    }
    for (auto& f : futures) {
        f.get();
    }
}

}  // namespace detail

/// Repetition-count label for tabular output: the fixed M, "n+1", or "3".
inline std::string repetition_label(const RepetitionPolicy& policy) {
    if (const auto* fixed = std::get_if<FixedRepetitions>(&policy)) {
        return std::to_string(fixed->m);
    }
    return std::holds_alternative<GrowingRepetitions>(policy) ? "n+1" : "3";
}

/// Run every configured tuple. Trials are independent episodes, each owning
/// RngStream(seed, trial_index); results reduce in trial order, so the output
/// is byte-identical for every thread count.
inline SweepResult run_sweep(const SweepConfig& cfg, int64_t threads = 1) {
    SweepResult result;
    result.config = cfg;
    int64_t row_index = 0;
    for (const auto& policy : cfg.policies) {
        for (double contrast : cfg.contrasts) {
            for (double gamma : cfg.gammas) {
                const ReadoutModel readout(contrast, gamma);
                for (int64_t n = cfg.n_min; n <= cfg.n_max; ++n) {
                    const Schedule sched = make_schedule(n, policy);
                    std::vector<std::optional<double>> deltas(static_cast<size_t>(cfg.trials));
                    detail::run_indexed(cfg.trials, threads, [&](int64_t trial) {
                        RngStream rng(cfg.seed, static_cast<uint64_t>(trial));
                        const double phi =
                            cfg.random_phase ? rng.next_angle() : wrap_angle(cfg.fixed_phase);
                        const EpisodeTrace trace = run_episode(phi, sched, readout, rng);
                        if (trace.estimate_defined) {
                            deltas[static_cast<size_t>(trial)] =
                                wrap_angle(trace.phi_est - phi);
                        }
                    });

                    std::vector<double> used;
                    used.reserve(deltas.size());
                    for (const auto& d : deltas) {
                        if (d.has_value()) {
                            used.push_back(*d);
                        }
                    }
                    SweepRow row;
                    row.n = n;
                    row.policy = policy;
                    row.contrast = contrast;
                    row.gamma = gamma;
                    row.total_time = sched.total_time();
                    row.trials = cfg.trials;
                    row.excluded = cfg.trials - static_cast<int64_t>(used.size());
                    row.seed = cfg.seed;
                    if (used.empty()) {
                        row.v_h = std::numeric_limits<double>::infinity();
                        row.std_error = std::numeric_limits<double>::infinity();
                    } else {
                        RngStream boot(cfg.seed ^ 0xB0075EEDCAFEF00DULL,
                                       static_cast<uint64_t>(row_index));
                        const auto est = ensemble_holevo_with_error(used, boot);
                        row.v_h = est.v_h;
                        row.std_error = est.std_error;
                    }
                    result.rows.push_back(row);
                    ++row_index;
                }
            }
        }
    }
    return result;
}

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw ConfigError(std::string("config: missing required key '") + key + "'");
    }
    return doc.at(key);
}

inline int64_t int_field(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        throw ConfigError("config: key '" + path + "' must be an integer");
    }
    return v.get<int64_t>();
}

inline double number_field(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ConfigError("config: key '" + path + "' must be a number");
    }
    return v.get<double>();
}

}  // namespace detail

/// Parse and fully validate a sweep configuration document. Unknown keys are
/// rejected; limits are checked with the offending key named in the error.
inline SweepConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top-level document must be an object");
    }
    static const std::vector<std::string> known = {
        "n_min", "n_max",  "policies", "c_values", "gamma_values",
        "trials", "seed",  "phi_true", "out"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    SweepConfig cfg;
    cfg.n_min = detail::int_field(detail::require_key(doc, "n_min"), "n_min");
    cfg.n_max = detail::int_field(detail::require_key(doc, "n_max"), "n_max");
    if (cfg.n_min < 0) {
        throw ConfigError("config: key 'n_min' must be >= 0");
    }
    if (cfg.n_max < cfg.n_min) {
        throw ConfigError("config: key 'n_max' must be >= n_min");
    }
    if (cfg.n_max > 20) {
        throw ConfigError("config: key 'n_max' above 20 is not supported");
    }

    if (doc.contains("policies")) {
        const auto& arr = doc.at("policies");
        if (!arr.is_array() || arr.empty()) {
            throw ConfigError("config: key 'policies' must be a nonempty array of strings");
        }
        cfg.policies.clear();
        for (size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_string()) {
                throw ConfigError("config: key 'policies[" + std::to_string(i) +
                                  "]' must be a string");
            }
            try {
                cfg.policies.push_back(parse_policy(arr[i].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("config: key 'policies[" + std::to_string(i) + "]': " +
                                  e.what());
            }
        }
    }

    if (doc.contains("c_values")) {
        const auto& arr = doc.at("c_values");
        if (!arr.is_array() || arr.empty()) {
            throw ConfigError("config: key 'c_values' must be a nonempty array of numbers");
        }
        cfg.contrasts.clear();
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "c_values[" + std::to_string(i) + "]";
            const double c = detail::number_field(arr[i], path);
            if (!(c >= 0.0 && c <= 1.0)) {
                throw ConfigError("config: key '" + path + "' must lie in [0, 1]");
            }
            cfg.contrasts.push_back(c);
        }
    }

    if (doc.contains("gamma_values")) {
        const auto& arr = doc.at("gamma_values");
        if (!arr.is_array() || arr.empty()) {
            throw ConfigError("config: key 'gamma_values' must be a nonempty array of numbers");
        }
        cfg.gammas.clear();
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "gamma_values[" + std::to_string(i) + "]";
            const double g = detail::number_field(arr[i], path);
            if (!(g >= 0.0)) {
                throw ConfigError("config: key '" + path + "' must be >= 0");
            }
            cfg.gammas.push_back(g);
        }
    }

    if (doc.contains("trials")) {
        cfg.trials = detail::int_field(doc.at("trials"), "trials");
        if (cfg.trials < 1) {
            throw ConfigError("config: key 'trials' must be >= 1");
        }
    }
    if (doc.contains("seed")) {
        const auto& v = doc.at("seed");
        if (!v.is_number_integer() || v.get<int64_t>() < 0) {
            throw ConfigError("config: key 'seed' must be a nonnegative integer");
        }
        cfg.seed = v.get<uint64_t>();
    }
    if (doc.contains("phi_true")) {
        const auto& v = doc.at("phi_true");
        if (v.is_string()) {
            if (v.get<std::string>() != "uniform") {
                throw ConfigError("config: key 'phi_true' must be \"uniform\" or a number");
            }
            cfg.random_phase = true;
        } else if (v.is_number()) {
            cfg.random_phase = false;
            cfg.fixed_phase = v.get<double>();
            if (!std::isfinite(cfg.fixed_phase)) {
                throw ConfigError("config: key 'phi_true' must be finite");
            }
        } else {
            throw ConfigError("config: key 'phi_true' must be \"uniform\" or a number");
        }
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) {
            throw ConfigError("config: key 'out' must be a string");
        }
        cfg.output_path = doc.at("out").get<std::string>();
    }
    return cfg;
}

/// Canonical JSON for a configuration; parse_config(emit_config(c)) == c.
inline std::string emit_config(const SweepConfig& cfg) {
    nlohmann::json doc;
    doc["n_min"] = cfg.n_min;
    doc["n_max"] = cfg.n_max;
    nlohmann::json policies = nlohmann::json::array();
    for (const auto& p : cfg.policies) {
        policies.push_back(policy_to_string(p));
    }
    doc["policies"] = policies;
    doc["c_values"] = cfg.contrasts;
    doc["gamma_values"] = cfg.gammas;
    doc["trials"] = cfg.trials;
    doc["seed"] = cfg.seed;
    if (cfg.random_phase) {
        doc["phi_true"] = "uniform";
    } else {
        doc["phi_true"] = cfg.fixed_phase;
    }
    if (!cfg.output_path.empty()) {
        doc["out"] = cfg.output_path;
    }
    return doc.dump(2) + "\n";
}

}  // namespace adaphase
