#pragma once

#include <cmath>
#include <numbers>

namespace adaphase {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// p_0 of every normalized circular density.
inline constexpr double uniform_coefficient = 1.0 / two_pi;

/// Reduce an angle to the principal interval (-pi, pi].
inline double wrap_angle(double x) {
    double r = std::remainder(x, two_pi);
    if (r <= -pi) {
        r += two_pi;
    }
    return r;
}

}  // namespace adaphase
