#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "adaphase/angles.hpp"
#include "adaphase/errors.hpp"
#include "adaphase/readout.hpp"

namespace adaphase {

/// Circular probability density over phi in (-pi, pi] stored in Fourier
/// space: P(phi) = sum_{k=-K..K} p_k e^{i k phi}. Only k >= 0 is stored;
/// p_{-k} = conj(p_k) by hermitian symmetry, so P is real by construction.
/// A normalized density keeps p_0 = 1/(2 pi) exactly. Values are immutable
/// from the caller's perspective; updates return a new pdf.
class FourierPdf {
  public:
    /// Uniform density: K = 0, p_0 = 1/(2 pi).
    static FourierPdf flat_prior() {
        return FourierPdf({std::complex<double>(uniform_coefficient, 0.0)});
    }

    /// Build from raw coefficients p_0..p_K. p_0 must be real and positive;
    /// the vector is rescaled so that p_0 = 1/(2 pi) exactly.
    static FourierPdf from_coefficients(std::vector<std::complex<double>> coeffs) {
        if (coeffs.empty()) {
            throw std::invalid_argument("coefficient vector must contain at least p_0");
        }
        const double re = coeffs[0].real();
        if (!(re > 0.0) || std::abs(coeffs[0].imag()) > 1e-12 * re) {
            throw std::invalid_argument("p_0 must be real and positive");
        }
        const double scale = uniform_coefficient / re;
        for (auto& c : coeffs) {
            c *= scale;
        }
        coeffs[0] = {uniform_coefficient, 0.0};
        return FourierPdf(std::move(coeffs));
    }

    /// Bandwidth K (largest stored coefficient index).
    int64_t bandwidth() const { return static_cast<int64_t>(coeffs_.size()) - 1; }

    /// p_k for any integer k; zero beyond the band, conjugated for k < 0.
    std::complex<double> coefficient(int64_t k) const {
        const int64_t a = k < 0 ? -k : k;
        if (a >= static_cast<int64_t>(coeffs_.size())) {
            return {0.0, 0.0};
        }
        const std::complex<double>& c = coeffs_[static_cast<size_t>(a)];
        return k < 0 ? std::conj(c) : c;
    }

    const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

  private:
    explicit FourierPdf(std::vector<std::complex<double>> coeffs) : coeffs_(std::move(coeffs)) {}

    std::vector<std::complex<double>> coeffs_;

    friend FourierPdf bayes_update(const FourierPdf&, const MeasurementSettings&, int,
                                   const ReadoutModel&);
};

/// Posterior after observing outcome m with settings s under readout model r:
///   p_k <- p_k / 2 - (-1)^m (c e^{-t gamma} / 4) (e^{i theta} p_{k-t} + e^{-i theta} p_{k+t})
/// renormalized to p_0 = 1/(2 pi). The bandwidth grows by t.
inline FourierPdf bayes_update(const FourierPdf& pdf, const MeasurementSettings& s, int outcome,
                               const ReadoutModel& r) {
    const int64_t t = s.t;
    const int64_t k_new = pdf.bandwidth() + t;
    const double q = 0.25 * r.effective_contrast(t);
    const double sign = outcome == 0 ? -1.0 : 1.0;  // -(-1)^m
    const std::complex<double> w = std::polar(1.0, s.theta);

    std::vector<std::complex<double>> out(static_cast<size_t>(k_new) + 1);
    for (int64_t k = 0; k <= k_new; ++k) {
        std::complex<double> v = 0.5 * pdf.coefficient(k);
        v += (sign * q) * (w * pdf.coefficient(k - t) + std::conj(w) * pdf.coefficient(k + t));
        out[static_cast<size_t>(k)] = v;
    }

    const double z = out[0].real();  // imaginary part vanishes by symmetry
    if (!(z > 0.0)) {
        throw ImpossibleOutcome("bayes_update: outcome has zero probability under the prior");
    }
    const double scale = uniform_coefficient / z;
    for (auto& c : out) {
        c *= scale;
    }
    out[0] = {uniform_coefficient, 0.0};
    return FourierPdf(std::move(out));
}

/// <phi> = -2 i pi sum_{k != 0} (-1)^k p_k / k. With hermitian storage the
/// pair (k, -k) contributes 4 pi (-1)^k Im(p_k) / k and the imaginary part of
/// the full sum vanishes identically.
inline double mean(const FourierPdf& pdf) {
    double acc = 0.0;
    double sign = -1.0;
    for (int64_t k = 1; k <= pdf.bandwidth(); ++k) {
        acc += sign * pdf.coefficient(k).imag() / static_cast<double>(k);
        sign = -sign;
    }
    return 4.0 * pi * acc;
}

/// <phi^2> - <phi>^2 = (2 pi^3 / 3) p_0 + 4 pi sum_{k != 0} (-1)^k p_k / k^2 - <phi>^2.
inline double variance(const FourierPdf& pdf) {
    double acc = 0.0;
    double sign = -1.0;
    for (int64_t k = 1; k <= pdf.bandwidth(); ++k) {
        acc += sign * pdf.coefficient(k).real() / static_cast<double>(k * k);
        sign = -sign;
    }
    const double mu = mean(pdf);
    return (2.0 * pi * pi * pi / 3.0) * pdf.coefficient(0).real() + 8.0 * pi * acc - mu * mu;
}

/// Holevo variance V_H = (2 pi |p_{-1}|)^{-2} - 1; +infinity when p_{-1} = 0.
inline double holevo_variance(const FourierPdf& pdf) {
    const double a = two_pi * std::abs(pdf.coefficient(1));
    if (a == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (a * a) - 1.0;
}

/// phi_est = arg(p_{-t}) / t, wrapped to (-pi/t, pi/t].
inline double phase_estimate(const FourierPdf& pdf, int64_t t) {
    if (t < 1) {
        throw std::invalid_argument("phase_estimate: t must be >= 1");
    }
    const std::complex<double> c = pdf.coefficient(t);
    if (std::abs(c) < 1e-15) {
        throw ZeroCoefficient("phase_estimate: |p_t| below 1e-15");
    }
    double a = std::arg(std::conj(c));
    if (a <= -pi) {
        a += two_pi;
    }
    return a / static_cast<double>(t);
}

/// P(phi) = p_0 + 2 sum_{k>=1} Re(p_k e^{i k phi}).
inline double evaluate_density(const FourierPdf& pdf, double phi) {
    const std::complex<double> step = std::polar(1.0, phi);
    std::complex<double> phase = 1.0;
    double acc = 0.0;
    for (int64_t k = 1; k <= pdf.bandwidth(); ++k) {
        if ((k & 63) == 0) {
            phase = std::polar(1.0, static_cast<double>(k) * phi);  // refresh rounding drift
        } else {
            phase *= step;
        }
        acc += (pdf.coefficient(k) * phase).real();
    }
    return pdf.coefficient(0).real() + 2.0 * acc;
}

}  // namespace adaphase
