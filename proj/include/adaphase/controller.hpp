#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "adaphase/fourier_pdf.hpp"
#include "adaphase/readout.hpp"
#include "adaphase/rng.hpp"
#include "adaphase/schedule.hpp"

namespace adaphase {

/// Readout phase maximizing |p_{-t}| after the next update, given the prior
/// coefficient p_{-2t} = q e^{i chi}: the updated magnitude is proportional
/// to sqrt(1 + 4 pi^2 q^2 + 4 pi q cos(chi + 2 theta)), maximal at
/// theta = -chi/2. Falls back to 0 for a vanishing coefficient.
inline double optimal_readout_phase(std::complex<double> p_minus_2t) {
    if (std::abs(p_minus_2t) < 1e-15) {
        return 0.0;
    }
    return -0.5 * std::arg(p_minus_2t);
}

inline double choose_phase(const FourierPdf& pdf, int64_t t) {
    if (t < 1) {
        throw std::invalid_argument("choose_phase: t must be >= 1");
    }
    return optimal_readout_phase(pdf.coefficient(-2 * t));
}

struct StepRecord {
    int64_t index;
    int64_t time_multiple;
    double theta;
    std::vector<int> outcomes;  // raw measured bits, in order
    double abs_coefficient;     // |p_{-t_n}| after the step's updates
    double holevo;              // posterior Holevo variance after the step
};

/// Full record of one adaptive estimation run.
struct EpisodeTrace {
    double phi_true = 0.0;
    int64_t levels = 0;
    RepetitionPolicy policy = FixedRepetitions{1};
    ReadoutModel readout;
    uint64_t seed = 0;
    uint64_t stream = 0;
    std::vector<StepRecord> steps;
    bool estimate_defined = false;
    double phi_est = std::numeric_limits<double>::quiet_NaN();
    double holevo = std::numeric_limits<double>::infinity();
    int64_t total_time = 0;
    FourierPdf posterior = FourierPdf::flat_prior();  // not serialized
};

/// Run one adaptive episode against a classical phase phi_true. Each step
/// picks theta from the current posterior, performs the policy's
/// measurements at (t_n, theta_n) and applies the corresponding updates.
inline EpisodeTrace run_episode(double phi_true, const Schedule& sched, const ReadoutModel& readout,
                                RngStream& rng, uint64_t seed = 0, uint64_t stream = 0) {
    EpisodeTrace trace;
    trace.phi_true = wrap_angle(phi_true);
    trace.levels = sched.levels;
    trace.policy = sched.policy;
    trace.readout = readout;
    trace.seed = seed;
    trace.stream = stream;
    trace.steps.reserve(sched.steps.size());

    FourierPdf pdf = FourierPdf::flat_prior();
    const bool majority = std::holds_alternative<MajorityVoteRepetitions>(sched.policy);

    for (const auto& step : sched.steps) {
        const double theta = choose_phase(pdf, step.time_multiple);
        const MeasurementSettings settings(step.time_multiple, theta);
        StepRecord record{step.index, step.time_multiple, theta, {}, 0.0, 0.0};

        if (majority) {
            int ones = 0;
            for (int j = 0; j < 3; ++j) {
                const int bit = sample_outcome(trace.phi_true, settings, readout, rng);
                record.outcomes.push_back(bit);
                ones += bit;
            }
            const int voted = ones >= 2 ? 1 : 0;
            pdf = bayes_update(pdf, settings, voted, readout);
            pdf = bayes_update(pdf, settings, voted, readout);
        } else {
            for (int64_t j = 0; j < step.measurements; ++j) {
                const int bit = sample_outcome(trace.phi_true, settings, readout, rng);
                record.outcomes.push_back(bit);
                pdf = bayes_update(pdf, settings, bit, readout);
            }
        }

        record.abs_coefficient = std::abs(pdf.coefficient(step.time_multiple));
        record.holevo = holevo_variance(pdf);
        trace.steps.push_back(std::move(record));
    }

    trace.total_time = sched.total_time();
    trace.holevo = holevo_variance(pdf);
    try {
        trace.phi_est = phase_estimate(pdf, 1);
        trace.estimate_defined = true;
    } catch (const ZeroCoefficient&) {
        trace.estimate_defined = false;
    }
    trace.posterior = std::move(pdf);
    return trace;
}

}  // namespace adaphase
