#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "adaphase/angles.hpp"

namespace adaphase {
namespace analytics {

/// Scalar recursion for |p_{-t_n}| along the deterministic phi = 0 branch,
/// started from the flat prior and iterated n times.
///
///   M = 1:  p <- (c/2) (p + 1/(2 pi))
///   M = 2:  p <- c (p + 1/(2 pi)) / (1 + c^2/2 + pi c^2 p)
///
/// For c = 1 these reduce to the closed forms (1 - 2^{-n})/(2 pi) and
/// (1 - 3/(2^{2n+1} + 1))/(2 pi).
inline double coefficient_recursion(int measurements_per_step, double contrast, int64_t n) {
    if (measurements_per_step != 1 && measurements_per_step != 2) {
        throw std::invalid_argument("coefficient_recursion: measurements per step must be 1 or 2");
    }
    if (!(contrast > 0.0 && contrast <= 1.0)) {
        throw std::invalid_argument("coefficient_recursion: contrast must lie in (0, 1]");
    }
    if (n < 0) {
        throw std::invalid_argument("coefficient_recursion: n must be >= 0");
    }
    const double c = contrast;
    double p = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        if (measurements_per_step == 1) {
            p = 0.5 * c * (p + uniform_coefficient);
        } else {
            p = c * (p + uniform_coefficient) / (1.0 + 0.5 * c * c + pi * c * c * p);
        }
    }
    return p;
}

/// Holevo variance of a coefficient magnitude, V_H = (2 pi p)^{-2} - 1.
inline double holevo_of_coefficient(double p_abs) {
    const double a = two_pi * p_abs;
    if (a == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (a * a) - 1.0;
}

/// Holevo variance against total interrogation time T (units of tau):
///   M = 1:  4 T / (T - 1)^2            (T > 1)
///   M = 2:  48 T (T + 4) / ((T - 2)^2 (T + 6)^2)   (T > 2)
inline double holevo_closed_form(int measurements_per_step, double total_time) {
    const double t = total_time;
    if (measurements_per_step == 1) {
        if (!(t > 1.0)) {
            throw std::domain_error("holevo_closed_form: M=1 curve requires T > 1");
        }
        return 4.0 * t / ((t - 1.0) * (t - 1.0));
    }
    if (measurements_per_step == 2) {
        if (!(t > 2.0)) {
            throw std::domain_error("holevo_closed_form: M=2 curve requires T > 2");
        }
        const double a = t - 2.0;
        const double b = t + 6.0;
        return 48.0 * t * (t + 4.0) / (a * a * b * b);
    }
    throw std::invalid_argument("holevo_closed_form: measurements per step must be 1 or 2");
}

/// First-order small-error limit V_H ~= 3 (1 + eps N) 2^{-2N} for the
/// two-measurement scheme with readout error eps.
inline double readout_error_asymptote(double epsilon, int64_t n_levels) {
    if (!(epsilon >= 0.0)) {
        throw std::invalid_argument("readout_error_asymptote: epsilon must be >= 0");
    }
    return std::ldexp(3.0 * (1.0 + epsilon * static_cast<double>(n_levels)),
                      static_cast<int>(-2 * n_levels));
}

/// Final coefficient magnitude |p_k| of the deterministic phi = 0 episode
/// with N+1 halving steps.
///
///   M = 1: the triangular profile (1 - |k| 2^{-(N+1)}) / (2 pi).
///   M = 2: piecewise cubic; with y = 2^{N+1}, x = 2^{N+2} and
///          D = 2^{N+2} + 2^{3N+5},
///            |k| <= y - 2:  [(x-1-|k|)(x-|k|)(x+1-|k|) - 4 (y-1-|k|)(y-|k|)(y+1-|k|)] / (2 pi D)
///            |k| >  y - 2:  (x-1-|k|)(x-|k|)(x+1-|k|) / (2 pi D)
///          and zero beyond |k| = x - 2.
inline double final_coefficient_profile(int measurements_per_step, int64_t n_levels, int64_t k) {
    if (n_levels < 0 || n_levels > 15) {
        throw std::invalid_argument("final_coefficient_profile: N must lie in [0, 15]");
    }
    const double a = static_cast<double>(k < 0 ? -k : k);
    if (measurements_per_step == 1) {
        const double support = std::ldexp(1.0, static_cast<int>(n_levels + 1));
        if (a >= support) {
            return 0.0;
        }
        return uniform_coefficient * (1.0 - a / support);
    }
    if (measurements_per_step == 2) {
        const double y = std::ldexp(1.0, static_cast<int>(n_levels + 1));
        const double x = 2.0 * y;
        if (a > x - 2.0) {
            return 0.0;
        }
        const double denom = x + std::ldexp(1.0, static_cast<int>(3 * n_levels + 5));
        double numer = (x - 1.0 - a) * (x - a) * (x + 1.0 - a);
        if (a <= y - 2.0) {
            numer -= 4.0 * (y - 1.0 - a) * (y - a) * (y + 1.0 - a);
        }
        return uniform_coefficient * numer / denom;
    }
    throw std::invalid_argument("final_coefficient_profile: measurements per step must be 1 or 2");
}

/// Analytic approximations to the deterministic final density.
///
///   M = 1: (S / 2 pi) sinc^2(S phi / 2) with S = 2^{N+1} and
///          sinc(x) = sin(x)/x. The half-angle argument is the convention
///          under which the curve integrates to one and tracks the exact
///          triangular-coefficient density near the peak.
///   M = 2: normal density with sigma = (sqrt(3)/2) 2^{-N}.
inline double density_approximation(int measurements_per_step, int64_t n_levels, double phi) {
    if (measurements_per_step == 1) {
        const double s = std::ldexp(1.0, static_cast<int>(n_levels + 1));
        const double u = 0.5 * s * phi;
        const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
        return s * uniform_coefficient * sinc * sinc;
    }
    if (measurements_per_step == 2) {
        const double scale = std::ldexp(1.0, static_cast<int>(n_levels));  // 2^N
        const double u = scale * phi;
        return std::exp(-2.0 / 3.0 * u * u) * scale / std::sqrt(1.5 * pi);
    }
    throw std::invalid_argument("density_approximation: measurements per step must be 1 or 2");
}

}  // namespace analytics
}  // namespace adaphase
