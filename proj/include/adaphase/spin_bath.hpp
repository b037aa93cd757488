#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "adaphase/angles.hpp"
#include "adaphase/errors.hpp"
#include "adaphase/readout.hpp"
#include "adaphase/rng.hpp"

namespace adaphase {

/// Couplings A_k between the sensor and the bath spins, in radians of sensor
/// phase per unit time multiple. A configuration s in {-1/2, +1/2}^{N_C}
/// contributes the phase sum_k A_k s_k.
struct SpinBath {
    std::vector<double> couplings;

    int64_t size() const { return static_cast<int64_t>(couplings.size()); }

    bool is_degenerate(double rel_tol = 1e-12) const {
        if (couplings.empty()) {
            return false;
        }
        const double a = couplings.front();
        for (double c : couplings) {
            if (std::abs(c - a) > rel_tol * std::max(1.0, std::abs(a))) {
                return false;
            }
        }
        return true;
    }
};

/// Dipolar-like random bath: spins placed isotropically at radii
/// r in [1, r_max] (density proportional to r^2), coupling A_k = a0 / r^3.
/// Heavy-tailed by construction: the closest spins dominate.
inline SpinBath make_random_bath(int64_t n_spins, uint64_t seed, double a0 = 0.5,
                                 double r_max = 4.0) {
    if (n_spins < 1) {
        throw std::invalid_argument("make_random_bath: bath needs at least one spin");
    }
    if (!(r_max > 1.0)) {
        throw std::invalid_argument("make_random_bath: r_max must exceed the inner radius 1");
    }
    RngStream rng(seed, 0x6261746872616E64ULL);  // dedicated stream for bath layout
    SpinBath bath;
    bath.couplings.reserve(static_cast<size_t>(n_spins));
    const double shell = r_max * r_max * r_max - 1.0;
    for (int64_t k = 0; k < n_spins; ++k) {
        const double r3 = 1.0 + shell * rng.next_double();  // r^3 uniform on [1, r_max^3]
        bath.couplings.push_back(a0 / r3);
    }
    return bath;
}

struct PhaseEntry {
    double phase;         // phi_alpha, radians per unit time multiple
    double probability;   // p_alpha
    int64_t degeneracy;   // number of merged configurations
};

/// Discrete distribution over the quantized phases of the bath, sorted by
/// phase. QND updates reweight the entries; phases and degeneracies never
/// change.
struct PhaseDistribution {
    std::vector<PhaseEntry> entries;
};

namespace detail {

inline PhaseDistribution merge_sorted_phases(std::vector<double>& phases, double weight_each) {
    constexpr double rel_tol = 1e-12;
    std::sort(phases.begin(), phases.end());
    PhaseDistribution dist;
    size_t i = 0;
    while (i < phases.size()) {
        size_t j = i + 1;
        double sum = phases[i];
        while (j < phases.size() &&
               std::abs(phases[j] - phases[j - 1]) <=
                   rel_tol * std::max({1.0, std::abs(phases[j]), std::abs(phases[j - 1])})) {
            sum += phases[j];
            ++j;
        }
        const auto count = static_cast<int64_t>(j - i);
        dist.entries.push_back(
            {sum / static_cast<double>(count), weight_each * static_cast<double>(count), count});
        i = j;
    }
    return dist;
}

}  // namespace detail

/// Enumerate all 2^{N_C} configurations of a maximally mixed bath and merge
/// equal phases (1e-12 relative) into weighted entries.
inline PhaseDistribution enumerate_phase_distribution(const SpinBath& bath) {
    const int64_t n = bath.size();
    if (n < 1) {
        throw std::invalid_argument("enumerate_phase_distribution: empty bath");
    }
    if (n > 22) {
        throw BathTooLarge("enumerate_phase_distribution: refusing N_C > 22 (2^N_C states)");
    }
    const uint64_t count = uint64_t{1} << n;
    std::vector<double> phases(count);
    // Gray-code walk: consecutive configurations differ by one spin flip.
    double phi = 0.0;
    for (double a : bath.couplings) {
        phi -= 0.5 * a;  // all spins down
    }
    uint64_t gray = 0;
    phases[0] = phi;
    for (uint64_t i = 1; i < count; ++i) {
        const uint64_t next_gray = i ^ (i >> 1);
        const uint64_t flipped = next_gray ^ gray;
        const int bit = std::countr_zero(flipped);
        phi += (next_gray & flipped) ? bath.couplings[static_cast<size_t>(bit)]
                                     : -bath.couplings[static_cast<size_t>(bit)];
        phases[i] = phi;
        gray = next_gray;
    }
    return detail::merge_sorted_phases(phases, 1.0 / static_cast<double>(count));
}

/// Fold all phases into (-pi, pi] and re-merge. Interrogations at integer
/// time multiples only ever resolve the phase modulo 2 pi, so protocols built
/// on such measurements (the degenerate-coupling scheme) estimate the wrapped
/// phase.
inline PhaseDistribution wrapped_to_principal(const PhaseDistribution& dist) {
    std::vector<PhaseEntry> wrapped = dist.entries;
    for (auto& e : wrapped) {
        e.phase = wrap_angle(e.phase);
    }
    std::sort(wrapped.begin(), wrapped.end(),
              [](const PhaseEntry& a, const PhaseEntry& b) { return a.phase < b.phase; });
    constexpr double rel_tol = 1e-12;
    PhaseDistribution out;
    for (const auto& e : wrapped) {
        if (!out.entries.empty() &&
            std::abs(e.phase - out.entries.back().phase) <=
                rel_tol * std::max({1.0, std::abs(e.phase), std::abs(out.entries.back().phase)})) {
            auto& last = out.entries.back();
            const double w = last.probability + e.probability;
            last.phase = (last.phase * last.probability + e.phase * e.probability) / w;
            last.probability = w;
            last.degeneracy += e.degeneracy;
        } else {
            out.entries.push_back(e);
        }
    }
    return out;
}

/// P(m) = sum_alpha p_alpha P(m | phi_alpha).
inline double bath_outcome_probability(const PhaseDistribution& dist,
                                       const MeasurementSettings& s, int outcome,
                                       const ReadoutModel& r) {
    double acc = 0.0;
    for (const auto& e : dist.entries) {
        acc += e.probability * outcome_probability(e.phase, s, outcome, r);
    }
    return acc;
}

/// Projective QND update: p_alpha <- p_alpha P(m | phi_alpha) / P(m).
/// Phases and degeneracies are untouched.
inline PhaseDistribution qnd_update(const PhaseDistribution& dist, const MeasurementSettings& s,
                                    int outcome, const ReadoutModel& r) {
    PhaseDistribution out = dist;
    double norm = 0.0;
    for (auto& e : out.entries) {
        e.probability *= outcome_probability(e.phase, s, outcome, r);
        norm += e.probability;
    }
    if (!(norm > 0.0)) {
        throw ImpossibleOutcome("qnd_update: outcome has zero probability");
    }
    for (auto& e : out.entries) {
        e.probability /= norm;
    }
    return out;
}

inline int sample_bath_outcome(const PhaseDistribution& dist, const MeasurementSettings& s,
                               const ReadoutModel& r, RngStream& rng) {
    return rng.next_double() < bath_outcome_probability(dist, s, 1, r) ? 1 : 0;
}

struct EntropyBits {
    double phase;          // -sum p log2 p over merged phase entries
    double configuration;  // phase entropy + sum p log2 d
};

inline EntropyBits entropy_bits(const PhaseDistribution& dist) {
    double phase = 0.0;
    double degeneracy = 0.0;
    for (const auto& e : dist.entries) {
        if (e.probability > 0.0) {
            phase -= e.probability * std::log2(e.probability);
            degeneracy += e.probability * std::log2(static_cast<double>(e.degeneracy));
        }
    }
    return {phase, phase + degeneracy};
}

/// <e^{i phi t}> for real t.
inline std::complex<double> phase_moment(const PhaseDistribution& dist, double t) {
    std::complex<double> acc = 0.0;
    for (const auto& e : dist.entries) {
        acc += e.probability * std::polar(1.0, e.phase * t);
    }
    return acc;
}

/// Holevo variance |<e^{i phi}>|^{-2} - 1 of the discrete distribution.
inline double holevo_variance(const PhaseDistribution& dist) {
    const double a = std::abs(phase_moment(dist, 1.0));
    if (a == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (a * a) - 1.0;
}

/// Free-induction envelope |C(t)| = |sum_alpha p_alpha e^{i phi_alpha t}|.
/// Entries below the weight cutoff contribute at most the cutoff times the
/// entry count and are skipped.
inline std::vector<double> coherence_function(const PhaseDistribution& dist,
                                              std::span<const double> times,
                                              double weight_cutoff = 1e-16) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        std::complex<double> acc = 0.0;
        for (const auto& e : dist.entries) {
            if (e.probability >= weight_cutoff) {
                acc += e.probability * std::polar(1.0, e.phase * t);
            }
        }
        out.push_back(std::abs(acc));
    }
    return out;
}

struct CoherenceTime {
    double t2star;         // first time with |C| <= 1/e; horizon when capped
    bool horizon_limited;  // no crossing found within the scanned horizon
    double horizon;
};

/// First crossing of |C(t)| below 1/e, located by a grid scan (resolving the
/// phase-spread beat scale) plus bisection. Returns the horizon when the
/// envelope never crosses within it.
inline CoherenceTime coherence_time(const PhaseDistribution& dist, double horizon = 1e4,
                                    int64_t max_grid = 1 << 22) {
    constexpr double threshold = 0.36787944117144233;  // 1/e
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& e : dist.entries) {
        lo = std::min(lo, e.phase);
        hi = std::max(hi, e.phase);
    }
    const double half_range = 0.5 * (hi - lo);
    if (!(half_range > 0.0)) {
        return {horizon, true, horizon};  // point mass never dephases
    }
    double step = 0.2 / half_range;
    const auto needed = static_cast<int64_t>(std::ceil(horizon / step));
    if (needed > max_grid) {
        step = horizon / static_cast<double>(max_grid);
    }

    auto envelope = [&dist](double t) {
        std::complex<double> acc = 0.0;
        for (const auto& e : dist.entries) {
            if (e.probability >= 1e-16) {
                acc += e.probability * std::polar(1.0, e.phase * t);
            }
        }
        return std::abs(acc);
    };

    double prev_t = 0.0;
    for (double t = step; t <= horizon + 0.5 * step; t += step) {
        const double c = envelope(t);
        if (c <= threshold) {
            double a = prev_t;
            double b = t;
            for (int iter = 0; iter < 60 && (b - a) > 1e-12 * std::max(1.0, b); ++iter) {
                const double mid = 0.5 * (a + b);
                (envelope(mid) <= threshold ? b : a) = mid;
            }
            return {0.5 * (a + b), false, horizon};
        }
        prev_t = t;
    }
    return {horizon, true, horizon};
}

}  // namespace adaphase
