#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "adaphase/controller.hpp"
#include "adaphase/schedule.hpp"
#include "adaphase/spin_bath.hpp"

namespace adaphase {

/// Readout phase for the next bath measurement, from the discrete analogue of
/// p_{-2t} (the density coefficient is <e^{i 2t phi}> / (2 pi)).
inline double choose_phase(const PhaseDistribution& dist, int64_t t) {
    if (t < 1) {
        throw std::invalid_argument("choose_phase: t must be >= 1");
    }
    const std::complex<double> p_minus_2t =
        phase_moment(dist, 2.0 * static_cast<double>(t)) * uniform_coefficient;
    return optimal_readout_phase(p_minus_2t);
}

/// Protocol bath for the degenerate-coupling scheme: couplings rescaled to
/// the base time tau = 2 pi / (a 2^M), i.e. A'_k = 2 pi 2^{-M}, which places
/// the quantized phases exactly on the 2^M-th roots of unity.
inline SpinBath degenerate_protocol_bath(int64_t n_spins, int64_t m_steps) {
    if (m_steps < 1 || m_steps > 40) {
        throw std::invalid_argument("degenerate_protocol_bath: step count out of range");
    }
    if ((int64_t{2} << m_steps) < n_spins) {
        throw std::invalid_argument(
            "degenerate_protocol_bath: need 2^M >= N_C/2 to resolve every eigenphase");
    }
    SpinBath bath;
    bath.couplings.assign(static_cast<size_t>(n_spins), two_pi * std::ldexp(1.0, -static_cast<int>(m_steps)));
    return bath;
}

struct NarrowingReport {
    int64_t n_c = 0;
    std::vector<double> couplings;  // couplings the protocol actually used
    int64_t levels = 0;
    RepetitionPolicy policy = FixedRepetitions{1};
    ReadoutModel readout;
    uint64_t seed = 0;
    uint64_t stream = 0;
    bool degenerate_protocol = false;

    EntropyBits entropy_before{0.0, 0.0};
    EntropyBits entropy_after{0.0, 0.0};
    double holevo_before = 0.0;
    double holevo_after = 0.0;
    CoherenceTime t2star_before{0.0, false, 0.0};
    CoherenceTime t2star_after{0.0, false, 0.0};

    std::vector<double> curve_times;
    std::vector<double> curve_before;
    std::vector<double> curve_after;

    std::vector<StepRecord> steps;
    bool estimate_defined = false;
    double phi_est = std::numeric_limits<double>::quiet_NaN();
    int64_t total_time = 0;

    PhaseDistribution initial_dist;  // in-memory only
    PhaseDistribution narrowed_dist;  // in-memory only
};

namespace detail {

inline double weighted_phase_std(const PhaseDistribution& dist) {
    double mu = 0.0;
    for (const auto& e : dist.entries) {
        mu += e.probability * e.phase;
    }
    double var = 0.0;
    for (const auto& e : dist.entries) {
        const double d = e.phase - mu;
        var += e.probability * d * d;
    }
    return std::sqrt(var);
}

}  // namespace detail

/// Run the adaptive schedule as a QND measurement of the bath phase and
/// quantify the narrowing. Degenerate baths (all couplings equal) are
/// automatically run in protocol units, with phases folded into (-pi, pi]:
/// integer-multiple interrogations only resolve the phase modulo 2 pi.
inline NarrowingReport run_narrowing(const SpinBath& bath, const Schedule& sched,
                                     const ReadoutModel& readout, RngStream& rng,
                                     uint64_t seed = 0, uint64_t stream = 0,
                                     int64_t curve_points = 512) {
    NarrowingReport report;
    report.n_c = bath.size();
    report.levels = sched.levels;
    report.policy = sched.policy;
    report.readout = readout;
    report.seed = seed;
    report.stream = stream;

    report.degenerate_protocol = bath.is_degenerate();
    if (report.degenerate_protocol) {
        const auto m_steps = static_cast<int64_t>(sched.steps.size());
        const SpinBath protocol = degenerate_protocol_bath(bath.size(), m_steps);
        report.couplings = protocol.couplings;
        report.initial_dist = wrapped_to_principal(enumerate_phase_distribution(protocol));
    } else {
        report.couplings = bath.couplings;
        report.initial_dist = enumerate_phase_distribution(bath);
    }

    report.entropy_before = entropy_bits(report.initial_dist);
    report.holevo_before = holevo_variance(report.initial_dist);
    const double sigma = detail::weighted_phase_std(report.initial_dist);
    const double horizon_before = sigma > 0.0 ? 50.0 / sigma : 1e4;
    report.t2star_before = coherence_time(report.initial_dist, horizon_before);

    PhaseDistribution dist = report.initial_dist;
    const bool majority = std::holds_alternative<MajorityVoteRepetitions>(sched.policy);
    for (const auto& step : sched.steps) {
        const double theta = choose_phase(dist, step.time_multiple);
        const MeasurementSettings settings(step.time_multiple, theta);
        StepRecord record{step.index, step.time_multiple, theta, {}, 0.0, 0.0};
        if (majority) {
            int ones = 0;
            for (int j = 0; j < 3; ++j) {
                const int bit = sample_bath_outcome(dist, settings, readout, rng);
                record.outcomes.push_back(bit);
                ones += bit;
            }
            const int voted = ones >= 2 ? 1 : 0;
            dist = qnd_update(dist, settings, voted, readout);
            dist = qnd_update(dist, settings, voted, readout);
        } else {
            for (int64_t j = 0; j < step.measurements; ++j) {
                const int bit = sample_bath_outcome(dist, settings, readout, rng);
                record.outcomes.push_back(bit);
                dist = qnd_update(dist, settings, bit, readout);
            }
        }
        record.abs_coefficient =
            std::abs(phase_moment(dist, static_cast<double>(step.time_multiple))) *
            uniform_coefficient;
        record.holevo = holevo_variance(dist);
        report.steps.push_back(std::move(record));
    }

    report.total_time = sched.total_time();
    report.entropy_after = entropy_bits(dist);
    report.holevo_after = holevo_variance(dist);
    const double t_ref = report.t2star_before.t2star;
    report.t2star_after = coherence_time(dist, 100.0 * std::max(t_ref, 1.0));

    const std::complex<double> m1 = phase_moment(dist, 1.0);
    if (std::abs(m1) >= two_pi * 1e-15) {
        report.phi_est = std::arg(m1);
        report.estimate_defined = true;
    }

    const double t_max = 4.0 * t_ref;
    report.curve_times.reserve(static_cast<size_t>(curve_points));
    for (int64_t i = 0; i < curve_points; ++i) {
        report.curve_times.push_back(t_max * static_cast<double>(i) /
                                     static_cast<double>(curve_points - 1));
    }
    report.curve_before = coherence_function(report.initial_dist, report.curve_times);
    report.curve_after = coherence_function(dist, report.curve_times);
    report.narrowed_dist = std::move(dist);
    return report;
}

}  // namespace adaphase
