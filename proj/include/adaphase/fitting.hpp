#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "adaphase/errors.hpp"

namespace adaphase {

/// Least-squares slope of log(y) against log(x).
inline double fit_loglog_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw InsufficientPoints("fit_loglog_slope: need at least 3 points");
    }
    double sx = 0.0, sy = 0.0;
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
            throw NonPositiveValue("fit_loglog_slope: points must be finite and positive");
        }
        logs.emplace_back(std::log(x), std::log(y));
        sx += logs.back().first;
        sy += logs.back().second;
    }
    const double mx = sx / static_cast<double>(logs.size());
    const double my = sy / static_cast<double>(logs.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [lx, ly] : logs) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
    }
    if (!(sxx > 0.0)) {
        throw InsufficientPoints("fit_loglog_slope: abscissae are all equal");
    }
    return sxy / sxx;
}

/// Width of the best-fit centered Gaussian a*exp(-x^2 / (2 sigma^2)) through
/// positive samples (x_i, y_i), by weighted least squares on log(y) with
/// weights y_i (restricting to the core y >= max(y) e^{-4.5}, i.e. three
/// sigma, so residual tails do not drag the fit).
inline double fit_gaussian_sigma(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit_gaussian_sigma: size mismatch");
    }
    double peak = 0.0;
    for (double y : ys) {
        peak = std::max(peak, y);
    }
    if (!(peak > 0.0)) {
        throw NonPositiveValue("fit_gaussian_sigma: no positive samples");
    }
    const double floor = peak * std::exp(-4.5);
    // weighted linear regression of log(y) on u = x^2
    double sw = 0.0, su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
    size_t used = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] >= floor)) {
            continue;
        }
        const double w = ys[i] / peak;
        const double u = xs[i] * xs[i];
        const double v = std::log(ys[i]);
        sw += w;
        su += w * u;
        sv += w * v;
        suu += w * u * u;
        suv += w * u * v;
        ++used;
    }
    if (used < 3) {
        throw InsufficientPoints("fit_gaussian_sigma: need at least 3 core samples");
    }
    const double det = sw * suu - su * su;
    if (!(det > 0.0)) {
        throw InsufficientPoints("fit_gaussian_sigma: degenerate abscissae");
    }
    const double slope = (sw * suv - su * sv) / det;  // = -1 / (2 sigma^2)
    if (!(slope < 0.0)) {
        throw NonPositiveValue("fit_gaussian_sigma: samples are not peaked");
    }
    return std::sqrt(-0.5 / slope);
}

}  // namespace adaphase
