#include "adaphase/readout.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "adaphase/angles.hpp"

using namespace adaphase;

TEST(OutcomeProbability, WorkedValues) {
    const ReadoutModel ideal(1.0, 0.0);
    EXPECT_DOUBLE_EQ(outcome_probability(0.0, MeasurementSettings(1, 0.0), 1, ideal), 1.0);
    EXPECT_DOUBLE_EQ(outcome_probability(0.0, MeasurementSettings(1, pi), 0, ideal), 1.0);
    const ReadoutModel blind(0.0, 0.0);
    EXPECT_DOUBLE_EQ(outcome_probability(0.4, MeasurementSettings(3, 1.0), 1, blind), 0.5);
}

TEST(OutcomeProbability, OutcomesSumToOne) {
    const ReadoutModel r(0.8, 0.1);
    for (int j = 0; j < 100; ++j) {
        const double phi = -pi + two_pi * j / 100.0 + 0.01;
        const MeasurementSettings s(1 + j % 5, 0.3 * j);
        const double p0 = outcome_probability(phi, s, 0, r);
        const double p1 = outcome_probability(phi, s, 1, r);
        EXPECT_DOUBLE_EQ(p0 + p1, 1.0);
        EXPECT_GE(p0, 0.0);
        EXPECT_LE(p0, 1.0);
    }
}

TEST(OutcomeProbability, MonotoneInTheFringe) {
    // P(1) = (1 + c e^{-t gamma} cos(t phi + theta)) / 2: linear in the
    // cosine with slope c e^{-t gamma} / 2.
    const ReadoutModel r(0.7, 0.2);
    const MeasurementSettings s(2, 0.0);
    const double cos_a = std::cos(2.0 * 0.3);
    const double cos_b = std::cos(2.0 * 1.2);
    const double pa = outcome_probability(0.3, s, 1, r);
    const double pb = outcome_probability(1.2, s, 1, r);
    const double slope = (pa - pb) / (cos_a - cos_b);
    EXPECT_NEAR(slope, 0.5 * r.effective_contrast(2), 1e-12);
    EXPECT_GT(pa, pb);
}

TEST(ReadoutModel, Validation) {
    EXPECT_THROW(ReadoutModel(1.5, 0.0), std::invalid_argument);
    EXPECT_THROW(ReadoutModel(-0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(ReadoutModel(1.0, -1.0), std::invalid_argument);
    EXPECT_DOUBLE_EQ(ReadoutModel(0.9, 0.0).error(), 0.1);
}

TEST(SampleOutcome, DeterministicExtremes) {
    const ReadoutModel ideal(1.0, 0.0);
    RngStream rng(123, 0);
    for (int j = 0; j < 50; ++j) {
        EXPECT_EQ(sample_outcome(0.0, MeasurementSettings(1, 0.0), ideal, rng), 1);
        EXPECT_EQ(sample_outcome(0.0, MeasurementSettings(1, pi), ideal, rng), 0);
    }
}

TEST(SampleOutcome, FairCoinAtZeroContrast) {
    const ReadoutModel blind(0.0, 0.0);
    RngStream rng(42, 7);
    int64_t ones = 0;
    const int64_t n = 100000;
    for (int64_t j = 0; j < n; ++j) {
        ones += sample_outcome(1.0, MeasurementSettings(1, 0.0), blind, rng);
    }
    EXPECT_NEAR(static_cast<double>(ones) / static_cast<double>(n), 0.5, 0.01);
}

TEST(RngStream, ReproducibleAndStreamSeparated) {
    RngStream a(99, 3);
    RngStream b(99, 3);
    RngStream c(99, 4);
    bool differs = false;
    for (int j = 0; j < 64; ++j) {
        const uint64_t va = a.next_u64();
        EXPECT_EQ(va, b.next_u64());
        differs |= va != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(RngStream, AngleRange) {
    RngStream rng(1, 1);
    for (int j = 0; j < 1000; ++j) {
        const double a = rng.next_angle();
        EXPECT_GT(a, -pi);
        EXPECT_LE(a, pi);
    }
}

TEST(WrapAngle, PrincipalInterval) {
    EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
    EXPECT_DOUBLE_EQ(wrap_angle(pi), pi);
    EXPECT_DOUBLE_EQ(wrap_angle(-pi), pi);
    EXPECT_NEAR(wrap_angle(3.0 * pi / 2.0), -pi / 2.0, 1e-15);
    EXPECT_NEAR(wrap_angle(-7.0 * pi), pi, 1e-12);
}
