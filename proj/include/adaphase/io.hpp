#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adaphase/controller.hpp"
#include "adaphase/errors.hpp"
#include "adaphase/fourier_pdf.hpp"
#include "adaphase/narrowing.hpp"
#include "adaphase/sweep.hpp"

namespace adaphase {

/// Shortest round-trip decimal form; infinities spell "inf"/"-inf".
inline std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// JSON value for a double; non-finite values become their string spelling so
/// the document stays lossless (plain JSON has no inf literal).
inline nlohmann::json json_number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return format_double(v);
}

inline void save_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

inline std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Episode traces
// ---------------------------------------------------------------------------

inline nlohmann::json trace_to_json(const EpisodeTrace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : trace.steps) {
        steps.push_back({{"n", s.index},
                         {"t", s.time_multiple},
                         {"theta", s.theta},
                         {"outcomes", s.outcomes},
                         {"abs_p", s.abs_coefficient},
                         {"holevo", json_number(s.holevo)}});
    }
    nlohmann::json doc;
    doc["phi_true"] = trace.phi_true;
    doc["N"] = trace.levels;
    doc["policy"] = policy_to_string(trace.policy);
    doc["c"] = trace.readout.contrast;
    doc["gamma"] = trace.readout.gamma;
    doc["seed"] = trace.seed;
    doc["steps"] = steps;
    doc["phi_est"] = trace.estimate_defined ? nlohmann::json(trace.phi_est) : nlohmann::json();
    doc["v_h"] = json_number(trace.holevo);
    doc["total_time"] = trace.total_time;
    return doc;
}

/// Re-run the updates recorded in a trace document and return the final
/// posterior. Majority-vote steps re-apply the majority bit twice, exactly as
/// the episode did.
inline FourierPdf replay_trace(const nlohmann::json& doc) {
    const ReadoutModel readout(doc.at("c").get<double>(), doc.at("gamma").get<double>());
    const RepetitionPolicy policy = parse_policy(doc.at("policy").get<std::string>());
    const bool majority = std::holds_alternative<MajorityVoteRepetitions>(policy);
    FourierPdf pdf = FourierPdf::flat_prior();
    for (const auto& step : doc.at("steps")) {
        const MeasurementSettings settings(step.at("t").get<int64_t>(),
                                           step.at("theta").get<double>());
        const auto outcomes = step.at("outcomes").get<std::vector<int>>();
        if (majority) {
            int ones = 0;
            for (int bit : outcomes) {
                ones += bit;
            }
            const int voted = 2 * ones >= static_cast<int>(outcomes.size()) ? 1 : 0;
            pdf = bayes_update(pdf, settings, voted, readout);
            pdf = bayes_update(pdf, settings, voted, readout);
        } else {
            for (int bit : outcomes) {
                pdf = bayes_update(pdf, settings, bit, readout);
            }
        }
    }
    return pdf;
}

// ---------------------------------------------------------------------------
// CSV emitters
// ---------------------------------------------------------------------------

inline std::string sweep_csv(const SweepResult& result) {
    std::string out = "N,policy,M,c,gamma,T,v_h,stderr,trials,excluded,seed\n";
    for (const auto& row : result.rows) {
        out += std::to_string(row.n);
        out += ',';
        out += policy_to_string(row.policy);
        out += ',';
        out += repetition_label(row.policy);
        out += ',';
        out += format_double(row.contrast);
        out += ',';
        out += format_double(row.gamma);
        out += ',';
        out += std::to_string(row.total_time);
        out += ',';
        out += format_double(row.v_h);
        out += ',';
        out += format_double(row.std_error);
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += std::to_string(row.excluded);
        out += ',';
        out += std::to_string(row.seed);
        out += '\n';
    }
    return out;
}

/// Density samples over (-pi, pi]: rows phi, P(phi), strictly increasing phi.
inline std::string density_csv(const FourierPdf& pdf, int64_t grid_points) {
    if (grid_points < 2) {
        throw std::invalid_argument("density_csv: need at least 2 grid points");
    }
    std::string out = "phi,density\n";
    for (int64_t j = 0; j < grid_points; ++j) {
        const double phi =
            -pi + two_pi * static_cast<double>(j + 1) / static_cast<double>(grid_points);
        out += format_double(phi);
        out += ',';
        out += format_double(evaluate_density(pdf, phi));
        out += '\n';
    }
    return out;
}

inline std::string coefficients_csv(const FourierPdf& pdf) {
    std::string out = "k,re,im\n";
    for (int64_t k = 0; k <= pdf.bandwidth(); ++k) {
        const auto c = pdf.coefficient(k);
        out += std::to_string(k);
        out += ',';
        out += format_double(c.real());
        out += ',';
        out += format_double(c.imag());
        out += '\n';
    }
    return out;
}

/// Generic two-column curve.
inline std::string curve_csv(const std::string& x_name, const std::string& y_name,
                             const std::vector<std::pair<double, double>>& points) {
    std::string out = x_name + ',' + y_name + '\n';
    for (const auto& [x, y] : points) {
        out += format_double(x);
        out += ',';
        out += format_double(y);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Narrowing reports
// ---------------------------------------------------------------------------

inline nlohmann::json narrowing_report_to_json(const NarrowingReport& report) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : report.steps) {
        steps.push_back({{"n", s.index},
                         {"t", s.time_multiple},
                         {"theta", s.theta},
                         {"outcomes", s.outcomes},
                         {"abs_p", s.abs_coefficient},
                         {"holevo", json_number(s.holevo)}});
    }
    nlohmann::json curve = nlohmann::json::array();
    for (size_t i = 0; i < report.curve_times.size(); ++i) {
        curve.push_back({{"t", report.curve_times[i]}, {"abs_c", report.curve_after[i]}});
    }
    nlohmann::json doc;
    doc["n_c"] = report.n_c;
    doc["couplings"] = report.couplings;
    doc["schedule"] = {{"N", report.levels},
                       {"policy", policy_to_string(report.policy)},
                       {"degenerate_protocol", report.degenerate_protocol}};
    doc["entropy_bits_before"] = report.entropy_before.phase;
    doc["entropy_bits_after"] = report.entropy_after.phase;
    doc["holevo_before"] = json_number(report.holevo_before);
    doc["holevo_after"] = json_number(report.holevo_after);
    doc["t2star_before"] = report.t2star_before.horizon_limited
                               ? json_number(std::numeric_limits<double>::infinity())
                               : json_number(report.t2star_before.t2star);
    doc["t2star_after"] = report.t2star_after.horizon_limited
                              ? json_number(std::numeric_limits<double>::infinity())
                              : json_number(report.t2star_after.t2star);
    doc["t2star_horizon"] = report.t2star_after.horizon;
    doc["coherence_curve"] = curve;
    doc["trace"] = {{"c", report.readout.contrast},
                    {"gamma", report.readout.gamma},
                    {"seed", report.seed},
                    {"steps", steps},
                    {"phi_est", report.estimate_defined ? nlohmann::json(report.phi_est)
                                                        : nlohmann::json()},
                    {"total_time", report.total_time}};
    return doc;
}

/// Before/after coherence overlay on a shared time grid.
inline std::string coherence_overlay_csv(const NarrowingReport& report) {
    std::string out = "t,abs_c_before,abs_c_after\n";
    for (size_t i = 0; i < report.curve_times.size(); ++i) {
        out += format_double(report.curve_times[i]);
        out += ',';
        out += format_double(report.curve_before[i]);
        out += ',';
        out += format_double(report.curve_after[i]);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bath files
// ---------------------------------------------------------------------------

/// A bath file is either a JSON array of couplings or {"couplings": [...]}.
inline SpinBath parse_bath_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("bath file: invalid JSON: ") + e.what());
    }
    const nlohmann::json* arr = nullptr;
    if (doc.is_array()) {
        arr = &doc;
    } else if (doc.is_object() && doc.contains("couplings") && doc.at("couplings").is_array()) {
        arr = &doc.at("couplings");
    } else {
        throw ConfigError("bath file: expected an array or {\"couplings\": [...]}");
    }
    SpinBath bath;
    for (size_t i = 0; i < arr->size(); ++i) {
        if (!(*arr)[i].is_number()) {
            throw ConfigError("bath file: couplings[" + std::to_string(i) + "] must be a number");
        }
        const double a = (*arr)[i].get<double>();
        if (!std::isfinite(a)) {
            throw ConfigError("bath file: couplings[" + std::to_string(i) + "] must be finite");
        }
        bath.couplings.push_back(a);
    }
    if (bath.couplings.empty()) {
        throw ConfigError("bath file: coupling list is empty");
    }
    return bath;
}

}  // namespace adaphase
