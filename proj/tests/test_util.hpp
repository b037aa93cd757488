#pragma once

// Shared test helpers: quadrature oracles and a brute-force grid Bayes rule,
// kept independent of the Fourier-space update they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "adaphase/fourier_pdf.hpp"
#include "adaphase/readout.hpp"

namespace adaphase::testing {

/// Composite Simpson quadrature of f over [-pi, pi] (n intervals, even).
inline double simpson(const std::function<double(double)>& f, int64_t n = 8192) {
    const double h = two_pi / static_cast<double>(n);
    double acc = f(-pi) + f(pi);
    for (int64_t j = 1; j < n; ++j) {
        const double x = -pi + h * static_cast<double>(j);
        acc += f(x) * (j % 2 == 0 ? 2.0 : 4.0);
    }
    return acc * h / 3.0;
}

inline double quad_mean(const FourierPdf& pdf) {
    return simpson([&](double phi) { return phi * evaluate_density(pdf, phi); });
}

inline double quad_variance(const FourierPdf& pdf) {
    const double mu = quad_mean(pdf);
    return simpson([&](double phi) { return phi * phi * evaluate_density(pdf, phi); }) - mu * mu;
}

inline double quad_mass(const FourierPdf& pdf) {
    return simpson([&](double phi) { return evaluate_density(pdf, phi); });
}

/// |<e^{i phi}>| by quadrature.
inline double quad_resultant(const FourierPdf& pdf) {
    const double re = simpson([&](double phi) { return std::cos(phi) * evaluate_density(pdf, phi); });
    const double im = simpson([&](double phi) { return std::sin(phi) * evaluate_density(pdf, phi); });
    return std::hypot(re, im);
}

/// Brute-force Bayes rule: evaluate the prior on a uniform grid of at least
/// 16 (K + t) points, multiply by the outcome likelihood, renormalize, and
/// re-extract Fourier coefficients by quadrature. Exact (up to rounding) for
/// band-limited densities, and entirely independent of the coefficient-space
/// update it is used to validate.
inline std::vector<std::complex<double>> grid_bayes_oracle(const FourierPdf& prior,
                                                           const MeasurementSettings& s,
                                                           int outcome, const ReadoutModel& r) {
    const int64_t k_new = prior.bandwidth() + s.t;
    const int64_t grid = 16 * (k_new > 1 ? k_new : 1);
    std::vector<double> values(static_cast<size_t>(grid));
    double mass = 0.0;
    for (int64_t j = 0; j < grid; ++j) {
        const double phi = -pi + two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid);
        values[static_cast<size_t>(j)] =
            evaluate_density(prior, phi) * outcome_probability(phi, s, outcome, r);
        mass += values[static_cast<size_t>(j)];
    }
    mass *= two_pi / static_cast<double>(grid);
    std::vector<std::complex<double>> coeffs(static_cast<size_t>(k_new) + 1);
    for (int64_t k = 0; k <= k_new; ++k) {
        std::complex<double> acc = 0.0;
        for (int64_t j = 0; j < grid; ++j) {
            const double phi =
                -pi + two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid);
            acc += values[static_cast<size_t>(j)] * std::polar(1.0, -static_cast<double>(k) * phi);
        }
        coeffs[static_cast<size_t>(k)] = acc / (mass * static_cast<double>(grid));
    }
    return coeffs;
}

/// Gaussian-coefficient pdf p_k = e^{-k^2 sigma^2 / 2} / (2 pi), truncated
/// where the tail drops below 1e-18.
inline FourierPdf gaussian_pdf(double sigma) {
    std::vector<std::complex<double>> coeffs;
    for (int64_t k = 0;; ++k) {
        const double v = std::exp(-0.5 * sigma * sigma * static_cast<double>(k * k));
        if (k > 0 && v < 1e-18) {
            break;
        }
        coeffs.emplace_back(v / two_pi, 0.0);
    }
    return FourierPdf::from_coefficients(std::move(coeffs));
}

}  // namespace adaphase::testing
