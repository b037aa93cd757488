// Command-line front end: single-episode estimation, Monte Carlo sweeps,
// closed-form curves, bath narrowing, and trace replay.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adaphase/adaphase.hpp"

namespace {

using namespace adaphase;

SpinBath bath_from_spec(const std::string& spec, double* degenerate_a) {
    if (spec.rfind("degenerate:", 0) == 0) {
        const std::string args = spec.substr(11);
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("--bath degenerate:Nc,a needs two arguments");
        }
        const int64_t n_c = std::stoll(args.substr(0, comma));
        const double a = std::stod(args.substr(comma + 1));
        if (n_c < 1 || !(a != 0.0)) {
            throw ConfigError("--bath degenerate:Nc,a needs Nc >= 1 and a != 0");
        }
        if (degenerate_a != nullptr) {
            *degenerate_a = a;
        }
        SpinBath bath;
        bath.couplings.assign(static_cast<size_t>(n_c), a);
        return bath;
    }
    if (spec.rfind("random:", 0) == 0) {
        const std::string args = spec.substr(7);
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("--bath random:Nc,seed needs two arguments");
        }
        const int64_t n_c = std::stoll(args.substr(0, comma));
        const auto seed = static_cast<uint64_t>(std::stoull(args.substr(comma + 1)));
        return make_random_bath(n_c, seed);
    }
    return parse_bath_json(load_text(spec));
}

int run_estimate(const std::string& phi_spec, int64_t levels, const std::string& policy_text,
                 double contrast, double gamma, uint64_t seed, const std::string& trace_path) {
    const Schedule sched = make_schedule(levels, parse_policy(policy_text));
    const ReadoutModel readout(contrast, gamma);
    RngStream rng(seed, 0);
    double phi = 0.0;
    if (phi_spec == "random") {
        phi = rng.next_angle();
    } else {
        phi = wrap_angle(std::stod(phi_spec));
    }
    const EpisodeTrace trace = run_episode(phi, sched, readout, rng, seed, 0);

    nlohmann::json summary;
    summary["phi_true"] = trace.phi_true;
    summary["phi_est"] =
        trace.estimate_defined ? nlohmann::json(trace.phi_est) : nlohmann::json();
    summary["error"] = trace.estimate_defined
                           ? nlohmann::json(wrap_angle(trace.phi_est - trace.phi_true))
                           : nlohmann::json();
    summary["v_h"] = json_number(trace.holevo);
    summary["total_time"] = trace.total_time;
    summary["N"] = trace.levels;
    summary["policy"] = policy_to_string(trace.policy);
    summary["c"] = contrast;
    summary["gamma"] = gamma;
    summary["seed"] = seed;
    std::cout << summary.dump(2) << "\n";

    if (!trace_path.empty()) {
        save_text(trace_path, trace_to_json(trace).dump(2) + "\n");
    }
    return 0;
}

int run_sweep_command(const std::string& config_path, const std::string& out_path,
                      int64_t threads) {
    SweepConfig cfg = parse_config(load_text(config_path));
    const SweepResult result = run_sweep(cfg, threads);
    const std::string csv = sweep_csv(result);
    const std::string target = out_path.empty() ? cfg.output_path : out_path;
    if (target.empty()) {
        std::cout << csv;
    } else {
        save_text(target, csv);
    }
    return 0;
}

int run_analytic(const std::string& curve, int64_t n_levels, double contrast, double eps,
                 int64_t n_max, double t_min, double t_max, int64_t points, int64_t grid,
                 const std::string& out_path) {
    std::string csv;
    if (curve == "eq6" || curve == "eq7") {
        const int m = curve == "eq6" ? 1 : 2;
        if (!(t_min > (m == 1 ? 1.0 : 2.0))) {
            throw ConfigError("--tmin must exceed the curve's singular time");
        }
        std::vector<std::pair<double, double>> rows;
        const double ratio = std::pow(t_max / t_min, 1.0 / static_cast<double>(points - 1));
        double t = t_min;
        for (int64_t i = 0; i < points; ++i, t *= ratio) {
            rows.emplace_back(t, analytics::holevo_closed_form(m, t));
        }
        csv = curve_csv("T", "v_h", rows);
    } else if (curve == "recursion:m1" || curve == "recursion:m2") {
        const int m = curve == "recursion:m1" ? 1 : 2;
        csv = "n,abs_p,v_h\n";
        for (int64_t n = 0; n <= n_max; ++n) {
            const double p = analytics::coefficient_recursion(m, contrast, n);
            csv += std::to_string(n);
            csv += ',';
            csv += format_double(p);
            csv += ',';
            csv += format_double(analytics::holevo_of_coefficient(p));
            csv += '\n';
        }
    } else if (curve == "profile:m1" || curve == "profile:m2") {
        const int m = curve == "profile:m1" ? 1 : 2;
        const int64_t support =
            m == 1 ? (int64_t{1} << (n_levels + 1)) : (int64_t{1} << (n_levels + 2)) - 2;
        std::vector<std::pair<double, double>> rows;
        for (int64_t k = 0; k <= support; ++k) {
            rows.emplace_back(static_cast<double>(k),
                              analytics::final_coefficient_profile(m, n_levels, k));
        }
        csv = curve_csv("k", "p", rows);
    } else if (curve == "gauss" || curve == "sinc") {
        const int m = curve == "sinc" ? 1 : 2;
        std::vector<std::pair<double, double>> rows;
        for (int64_t j = 0; j < grid; ++j) {
            const double phi =
                -pi + two_pi * static_cast<double>(j + 1) / static_cast<double>(grid);
            rows.emplace_back(phi, analytics::density_approximation(m, n_levels, phi));
        }
        csv = curve_csv("phi", "density", rows);
    } else if (curve == "readout-asymptote") {
        std::vector<std::pair<double, double>> rows;
        for (int64_t n = 0; n <= n_max; ++n) {
            rows.emplace_back(static_cast<double>(n), analytics::readout_error_asymptote(eps, n));
        }
        csv = curve_csv("N", "v_h", rows);
    } else {
        throw ConfigError("unknown curve '" + curve + "'");
    }
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        save_text(out_path, csv);
    }
    return 0;
}

int run_narrow(const std::string& bath_spec, int64_t levels, const std::string& policy_text,
               double contrast, double gamma, uint64_t seed, const std::string& out_path,
               const std::string& curves_path) {
    const SpinBath bath = bath_from_spec(bath_spec, nullptr);
    const Schedule sched = make_schedule(levels, parse_policy(policy_text));
    const ReadoutModel readout(contrast, gamma);
    RngStream rng(seed, 0);
    const NarrowingReport report = run_narrowing(bath, sched, readout, rng, seed, 0);
    const std::string doc = narrowing_report_to_json(report).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        save_text(out_path, doc);
    }
    if (!curves_path.empty()) {
        save_text(curves_path, coherence_overlay_csv(report));
    }
    return 0;
}

int run_pdf(const std::string& trace_path, int64_t grid, const std::string& out_path,
            const std::string& coeffs_path) {
    const FourierPdf pdf = replay_trace(nlohmann::json::parse(load_text(trace_path)));
    if (!out_path.empty()) {
        save_text(out_path, density_csv(pdf, grid));
    } else {
        std::cout << density_csv(pdf, grid);
    }
    if (!coeffs_path.empty()) {
        save_text(coeffs_path, coefficients_csv(pdf));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive Bayesian phase estimation and spin-bath narrowing"};
    app.require_subcommand(1);

    // estimate
    std::string phi_spec = "random";
    int64_t levels = 8;
    std::string policy_text = "m2";
    double contrast = 1.0;
    double gamma = 0.0;
    uint64_t seed = 0;
    std::string trace_path;
    auto* estimate = app.add_subcommand("estimate", "Run one adaptive estimation episode");
    estimate->add_option("--phi", phi_spec, "True phase in radians, or 'random'");
    estimate->add_option("--n", levels, "Number of halving levels N (steps n = 0..N)");
    estimate->add_option("--policy", policy_text, "m1|m2|mfixed:K|growing|majority3");
    estimate->add_option("--c", contrast, "Readout contrast in [0, 1]");
    estimate->add_option("--gamma", gamma, "Decay rate tau/T2 per time multiple");
    estimate->add_option("--seed", seed, "RNG seed");
    estimate->add_option("--trace", trace_path, "Write the full episode trace JSON here");

    // sweep
    std::string config_path;
    std::string sweep_out;
    int64_t threads = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over a parameter grid");
    sweep_cmd->add_option("--config", config_path, "Sweep configuration JSON")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path (default: config 'out' or stdout)");
    sweep_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");

    // analytic
    std::string curve;
    double eps = 0.0;
    int64_t n_max = 12;
    double t_min = 4.0;
    double t_max = 4096.0;
    int64_t points = 64;
    int64_t grid = 1024;
    std::string analytic_out;
    auto* analytic = app.add_subcommand("analytic", "Emit a closed-form curve as CSV");
    analytic
        ->add_option("--curve", curve,
                     "eq6|eq7|recursion:m1|recursion:m2|profile:m1|profile:m2|gauss|sinc|"
                     "readout-asymptote")
        ->required();
    analytic->add_option("--n", levels, "Schedule parameter N for profile/gauss/sinc");
    analytic->add_option("--c", contrast, "Contrast for recursion curves");
    analytic->add_option("--eps", eps, "Readout error for readout-asymptote");
    analytic->add_option("--nmax", n_max, "Last index for recursion/asymptote curves");
    analytic->add_option("--tmin", t_min, "First T for eq6/eq7");
    analytic->add_option("--tmax", t_max, "Last T for eq6/eq7");
    analytic->add_option("--points", points, "Sample count for eq6/eq7 (log-spaced)");
    analytic->add_option("--grid", grid, "Grid size over (-pi, pi] for gauss/sinc");
    analytic->add_option("--out", analytic_out, "Output CSV path (default stdout)");

    // narrow
    std::string bath_spec;
    std::string narrow_out;
    std::string curves_path;
    auto* narrow = app.add_subcommand("narrow", "QND narrowing of a spin-bath phase");
    narrow->add_option("--bath", bath_spec, "Bath file, degenerate:Nc,a or random:Nc,seed")
        ->required();
    narrow->add_option("--n", levels, "Number of halving levels N");
    narrow->add_option("--policy", policy_text, "m1|m2|mfixed:K|growing|majority3");
    narrow->add_option("--c", contrast, "Readout contrast");
    narrow->add_option("--gamma", gamma, "Decay rate tau/T2");
    narrow->add_option("--seed", seed, "RNG seed");
    narrow->add_option("--out", narrow_out, "Report JSON path (default stdout)");
    narrow->add_option("--curves", curves_path, "Before/after coherence overlay CSV");

    // pdf
    std::string replay_path;
    std::string pdf_out;
    std::string coeffs_path;
    int64_t pdf_grid = 4096;
    auto* pdf_cmd = app.add_subcommand("pdf", "Replay a trace and dump the posterior density");
    pdf_cmd->add_option("--replay", replay_path, "Episode trace JSON to replay")->required();
    pdf_cmd->add_option("--grid", pdf_grid, "Density grid points over (-pi, pi]");
    pdf_cmd->add_option("--out", pdf_out, "Density CSV path (default stdout)");
    pdf_cmd->add_option("--coeffs", coeffs_path, "Also dump coefficients (k,re,im) here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (estimate->parsed()) {
            return run_estimate(phi_spec, levels, policy_text, contrast, gamma, seed, trace_path);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep_command(config_path, sweep_out, threads);
        }
        if (analytic->parsed()) {
            return run_analytic(curve, levels, contrast, eps, n_max, t_min, t_max, points, grid,
                                analytic_out);
        }
        if (narrow->parsed()) {
            return run_narrow(bath_spec, levels, policy_text, contrast, gamma, seed, narrow_out,
                              curves_path);
        }
        if (pdf_cmd->parsed()) {
            return run_pdf(replay_path, pdf_grid, pdf_out, coeffs_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
