#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "adaphase/angles.hpp"
#include "adaphase/rng.hpp"

namespace adaphase {

/// Readout contrast c and dimensionless decay rate gamma = tau/T2 (per unit
/// time multiple). The readout error is epsilon = 1 - c.
struct ReadoutModel {
    double contrast = 1.0;
    double gamma = 0.0;

    ReadoutModel() = default;

    ReadoutModel(double c, double g) : contrast(c), gamma(g) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw std::invalid_argument("readout contrast must lie in [0, 1]");
        }
        if (!(g >= 0.0)) {
            throw std::invalid_argument("decay rate gamma must be >= 0");
        }
    }

    double error() const { return 1.0 - contrast; }

    /// Fringe visibility c * e^{-t*gamma} after t time multiples.
    double effective_contrast(int64_t t) const {
        return contrast * std::exp(-static_cast<double>(t) * gamma);
    }
};

/// One Ramsey setting: free evolution for t multiples of the base time,
/// readout pulse phase theta (wrapped to (-pi, pi] on construction).
struct MeasurementSettings {
    int64_t t;
    double theta;

    MeasurementSettings(int64_t time_multiple, double readout_phase)
        : t(time_multiple), theta(wrap_angle(readout_phase)) {
        if (t < 1) {
            throw std::invalid_argument("time multiple must be >= 1");
        }
        if (!std::isfinite(readout_phase)) {
            throw std::invalid_argument("readout phase must be finite");
        }
    }
};

/// P(m | phi) = [1 - c e^{-t*gamma} (-1)^m cos(t*phi + theta)] / 2.
inline double outcome_probability(double phi, const MeasurementSettings& s, int outcome,
                                  const ReadoutModel& r) {
    const double fringe =
        r.effective_contrast(s.t) * std::cos(static_cast<double>(s.t) * phi + s.theta);
    return outcome == 0 ? 0.5 * (1.0 - fringe) : 0.5 * (1.0 + fringe);
}

inline int sample_outcome(double phi, const MeasurementSettings& s, const ReadoutModel& r,
                          RngStream& rng) {
    return rng.next_double() < outcome_probability(phi, s, 1, r) ? 1 : 0;
}

}  // namespace adaphase
