#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "adaphase/errors.hpp"
#include "adaphase/rng.hpp"

namespace adaphase {

/// Holevo variance of an ensemble of estimation errors delta_j:
/// |mean(e^{i delta})|^{-2} - 1. The resultant length plays the role the
/// normalized coefficient 2 pi |p_{-1}| plays for a posterior.
inline double ensemble_holevo(std::span<const double> errors) {
    if (errors.empty()) {
        throw EmptyEnsemble("ensemble_holevo: no errors supplied");
    }
    std::complex<double> acc = 0.0;
    for (double d : errors) {
        acc += std::polar(1.0, d);
    }
    const double r = std::abs(acc) / static_cast<double>(errors.size());
    if (r == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (r * r) - 1.0;
}

struct EnsembleHolevoEstimate {
    double v_h;
    double std_error;  // bootstrap standard error; inf when resamples diverge
};

/// Point estimate plus a bootstrap standard error over at least 200
/// resamples drawn from the given stream.
inline EnsembleHolevoEstimate ensemble_holevo_with_error(std::span<const double> errors,
                                                         RngStream& rng,
                                                         int64_t resamples = 200) {
    const double point = ensemble_holevo(errors);
    if (resamples < 200) {
        resamples = 200;
    }
    const auto n = errors.size();
    std::vector<double> draw(n);
    double sum = 0.0, sum_sq = 0.0;
    bool diverged = false;
    for (int64_t b = 0; b < resamples; ++b) {
        for (size_t i = 0; i < n; ++i) {
            const auto idx = static_cast<size_t>(rng.next_double() * static_cast<double>(n));
            draw[i] = errors[idx < n ? idx : n - 1];
        }
        const double v = ensemble_holevo(draw);
        if (!std::isfinite(v)) {
            diverged = true;
            break;
        }
        sum += v;
        sum_sq += v * v;
    }
    if (diverged || !std::isfinite(point)) {
        return {point, std::numeric_limits<double>::infinity()};
    }
    const double k = static_cast<double>(resamples);
    const double var = (sum_sq - sum * sum / k) / (k - 1.0);
    return {point, std::sqrt(std::max(var, 0.0))};
}

}  // namespace adaphase
