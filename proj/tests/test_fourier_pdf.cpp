#include "adaphase/fourier_pdf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adaphase/angles.hpp"
#include "test_util.hpp"

using namespace adaphase;

namespace {

const ReadoutModel kIdeal(1.0, 0.0);

FourierPdf cosine_posterior(double theta = 0.0, int outcome = 1) {
    // flat prior updated once at t = 1: posterior ~ (1 +/- cos(phi + theta)).
    return bayes_update(FourierPdf::flat_prior(), MeasurementSettings(1, theta), outcome, kIdeal);
}

}  // namespace

TEST(FlatPrior, UniformDensity) {
    const FourierPdf pdf = FourierPdf::flat_prior();
    EXPECT_EQ(pdf.bandwidth(), 0);
    EXPECT_DOUBLE_EQ(pdf.coefficient(0).real(), 1.0 / two_pi);
    EXPECT_DOUBLE_EQ(evaluate_density(pdf, 1.3), 1.0 / two_pi);
    EXPECT_TRUE(std::isinf(holevo_variance(pdf)));
}

TEST(BayesUpdate, CosinePosteriorFromFlatPrior) {
    const FourierPdf pdf = cosine_posterior();
    EXPECT_EQ(pdf.bandwidth(), 1);
    EXPECT_NEAR(pdf.coefficient(0).real(), 1.0 / two_pi, 1e-15);
    EXPECT_NEAR(pdf.coefficient(1).real(), 1.0 / (4.0 * pi), 1e-15);
    EXPECT_NEAR(pdf.coefficient(1).imag(), 0.0, 1e-15);

    const FourierPdf flipped = cosine_posterior(0.0, 0);
    EXPECT_NEAR(flipped.coefficient(1).real(), -1.0 / (4.0 * pi), 1e-15);
}

TEST(BayesUpdate, ZeroContrastIsUninformative) {
    const ReadoutModel blind(0.0, 0.0);
    const FourierPdf prior = cosine_posterior(0.7);
    const FourierPdf post = bayes_update(prior, MeasurementSettings(3, 1.1), 1, blind);
    EXPECT_EQ(post.bandwidth(), prior.bandwidth() + 3);
    for (int64_t k = 0; k <= post.bandwidth(); ++k) {
        EXPECT_NEAR(std::abs(post.coefficient(k) - prior.coefficient(k)), 0.0, 1e-15);
    }
}

TEST(BayesUpdate, RejectsBadSettings) {
    EXPECT_THROW(MeasurementSettings(0, 0.0), std::invalid_argument);
    EXPECT_THROW(MeasurementSettings(-2, 0.0), std::invalid_argument);
    EXPECT_THROW(MeasurementSettings(1, std::numeric_limits<double>::quiet_NaN()),
                 std::invalid_argument);
}

TEST(BayesUpdate, TwoEqualMeasurementsMatchThePairRule) {
    // Two m=1 updates at theta=0, t=1 must equal the combined rule
    // p_k <- (6 p_k + 4 p_{k-1} + 4 p_{k+1} + p_{k-2} + p_{k+2}) / norm.
    const FourierPdf prior = FourierPdf::flat_prior();
    const MeasurementSettings s(1, 0.0);
    const FourierPdf twice = bayes_update(bayes_update(prior, s, 1, kIdeal), s, 1, kIdeal);

    std::vector<std::complex<double>> combined(3);
    for (int64_t k = 0; k <= 2; ++k) {
        combined[static_cast<size_t>(k)] =
            6.0 * prior.coefficient(k) + 4.0 * prior.coefficient(k - 1) +
            4.0 * prior.coefficient(k + 1) + prior.coefficient(k - 2) + prior.coefficient(k + 2);
    }
    const FourierPdf expected = FourierPdf::from_coefficients(combined);
    ASSERT_EQ(twice.bandwidth(), 2);
    for (int64_t k = 0; k <= 2; ++k) {
        EXPECT_NEAR(std::abs(twice.coefficient(k) - expected.coefficient(k)), 0.0, 1e-15)
            << "k=" << k;
    }
}

TEST(Moments, FlatPrior) {
    const FourierPdf pdf = FourierPdf::flat_prior();
    EXPECT_DOUBLE_EQ(mean(pdf), 0.0);
    EXPECT_NEAR(variance(pdf), pi * pi / 3.0, 1e-12);
}

TEST(Moments, CosinePosterior) {
    const FourierPdf pdf = cosine_posterior();
    EXPECT_NEAR(mean(pdf), 0.0, 1e-12);
    // <phi^2> = pi^2/3 - 2 for the (1 + cos phi)/(2 pi) density.
    EXPECT_NEAR(variance(pdf), pi * pi / 3.0 - 2.0, 1e-12);
    EXPECT_NEAR(variance(pdf), testing::quad_variance(pdf), 1e-9);
}

TEST(Moments, ShiftedCosinePosterior) {
    // Posterior ~ (1 + cos(phi - 0.5)): linear mean is sin(0.5), the circular
    // mean (phase estimate) is 0.5. Both against the quadrature oracle.
    const FourierPdf pdf = cosine_posterior(-0.5);
    const double oracle = testing::quad_mean(pdf);
    EXPECT_NEAR(oracle, std::sin(0.5), 1e-9);
    EXPECT_NEAR(mean(pdf), oracle, 1e-9);
    EXPECT_NEAR(phase_estimate(pdf, 1), 0.5, 1e-9);
}

TEST(Moments, GaussianVariance) {
    const double sigma = 0.01;
    const FourierPdf pdf = testing::gaussian_pdf(sigma);
    EXPECT_NEAR(variance(pdf), sigma * sigma, 0.05 * sigma * sigma);
}

TEST(Holevo, WorkedValues) {
    // |p_1| = 1/(4 pi) -> (2 pi / (4 pi))^{-2} - 1 = 3.
    EXPECT_NEAR(holevo_variance(cosine_posterior()), 3.0, 1e-12);
    const FourierPdf concentrated = testing::gaussian_pdf(1e-8);
    EXPECT_NEAR(holevo_variance(concentrated), 0.0, 1e-10);
}

TEST(PhaseEstimate, ErrorsAndWrapping) {
    EXPECT_THROW(phase_estimate(FourierPdf::flat_prior(), 1), ZeroCoefficient);
    EXPECT_THROW(phase_estimate(cosine_posterior(), 0), std::invalid_argument);
    EXPECT_NEAR(phase_estimate(cosine_posterior(), 1), 0.0, 1e-15);
}

TEST(Density, WorkedValues) {
    const FourierPdf pdf = cosine_posterior();
    EXPECT_NEAR(evaluate_density(pdf, 0.0), 1.0 / pi, 1e-14);
    EXPECT_NEAR(evaluate_density(pdf, pi), 0.0, 1e-12);
}

TEST(Density, NormalizedAfterUpdates) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_int_distribution<int> time(1, 4);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int rep = 0; rep < 20; ++rep) {
        FourierPdf pdf = FourierPdf::flat_prior();
        const int depth = 1 + rep % 3;
        for (int u = 0; u < depth; ++u) {
            const ReadoutModel r(0.2 + 0.8 * unit(gen), 0.2 * unit(gen));
            pdf = bayes_update(pdf, MeasurementSettings(time(gen), angle(gen)), bit(gen), r);
        }
        EXPECT_DOUBLE_EQ(pdf.coefficient(0).real(), 1.0 / two_pi);
        // 4096-point Riemann sum is exact for band-limited densities.
        double mass = 0.0;
        for (int j = 0; j < 4096; ++j) {
            mass += evaluate_density(pdf, -pi + two_pi * (j + 0.5) / 4096.0);
        }
        mass *= two_pi / 4096.0;
        EXPECT_NEAR(mass, 1.0, 1e-8);
        for (int64_t k = 0; k <= pdf.bandwidth(); ++k) {
            EXPECT_LE(std::abs(pdf.coefficient(k)), 1.0 / two_pi + 1e-12);
        }
    }
}

TEST(Oracle, RandomUpdatesMatchGridBayes) {
    std::mt19937_64 gen(2026);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_int_distribution<int> time(1, 4);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int rep = 0; rep < 60; ++rep) {
        FourierPdf pdf = FourierPdf::flat_prior();
        const int depth = rep % 4;  // priors up to 3 updates deep
        for (int u = 0; u < depth; ++u) {
            const ReadoutModel r(0.2 + 0.8 * unit(gen), 0.2 * unit(gen));
            pdf = bayes_update(pdf, MeasurementSettings(time(gen), angle(gen)), bit(gen), r);
        }
        const ReadoutModel r(0.2 + 0.8 * unit(gen), 0.2 * unit(gen));
        const MeasurementSettings s(time(gen), angle(gen));
        const int m = bit(gen);
        const FourierPdf updated = bayes_update(pdf, s, m, r);
        const auto oracle = testing::grid_bayes_oracle(pdf, s, m, r);
        ASSERT_EQ(updated.bandwidth() + 1, static_cast<int64_t>(oracle.size()));
        for (size_t k = 0; k < oracle.size(); ++k) {
            EXPECT_NEAR(std::abs(updated.coefficient(static_cast<int64_t>(k)) - oracle[k]), 0.0,
                        1e-8)
                << "rep=" << rep << " k=" << k;
        }
    }
}

TEST(Oracle, MomentsMatchQuadrature) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_int_distribution<int> time(1, 3);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int rep = 0; rep < 10; ++rep) {
        FourierPdf pdf = FourierPdf::flat_prior();
        for (int u = 0; u <= rep % 3; ++u) {
            pdf = bayes_update(pdf, MeasurementSettings(time(gen), angle(gen)), bit(gen), kIdeal);
        }
        EXPECT_NEAR(mean(pdf), testing::quad_mean(pdf), 1e-8);
        EXPECT_NEAR(variance(pdf), testing::quad_variance(pdf), 1e-8);
        EXPECT_NEAR(testing::quad_mass(pdf), 1.0, 1e-10);
        const double resultant = testing::quad_resultant(pdf);
        if (resultant > 1e-6) {
            EXPECT_NEAR(holevo_variance(pdf), 1.0 / (resultant * resultant) - 1.0, 1e-8);
        }
    }
}

TEST(Symmetry, MirroredReadoutPhaseMirrorsTheDensity) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int rep = 0; rep < 10; ++rep) {
        const FourierPdf even = cosine_posterior();  // even prior
        const double theta = angle(gen);
        const ReadoutModel r(0.9, 0.05);
        const FourierPdf plus = bayes_update(even, MeasurementSettings(2, theta), 1, r);
        const FourierPdf minus = bayes_update(even, MeasurementSettings(2, -theta), 1, r);
        for (int j = 0; j < 64; ++j) {
            const double phi = -pi + two_pi * (j + 0.5) / 64.0;
            EXPECT_NEAR(evaluate_density(plus, phi), evaluate_density(minus, -phi), 1e-10);
        }
    }
}
