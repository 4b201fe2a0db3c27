#include <gtest/gtest.h>

#include <cmath>

#include "alsvm/error.hpp"
#include "alsvm/proportion.hpp"

using namespace alsvm;

namespace {

// Two-sided critical values from standard normal tables (to 1e-9).
constexpr double kZ90 = 1.6448536269514722;
constexpr double kZ95 = 1.959963984540054;
constexpr double kZ99 = 2.5758293035489004;

// Direct formula, written independently of the library.
double formula_margin(double z, double n, double p, double big_n = 0) {
    double e = z * std::sqrt(p * (1 - p) / n);
    if (big_n > 0) e *= std::sqrt((big_n - n) / (big_n - 1));
    return e;
}

}  // namespace

TEST(ZCritical, MatchesTables) {
    EXPECT_NEAR(z_critical(0.90), kZ90, 1e-9);
    EXPECT_NEAR(z_critical(0.95), kZ95, 1e-9);
    EXPECT_NEAR(z_critical(0.99), kZ99, 1e-9);
    EXPECT_THROW(z_critical(1.0), ArgumentError);
    EXPECT_THROW(z_critical(0.0), ArgumentError);
}

TEST(RequiredSampleSize, Examples) {
    // z^2 * 0.25 / 0.098^2 = 99.996 -> 100
    EXPECT_NEAR(kZ95 * kZ95 * 0.25 / (0.098 * 0.098), 99.996, 1e-3);
    EXPECT_EQ(required_sample_size(0.098, 0.95, std::nullopt, 0.5), 100u);
    EXPECT_EQ(required_sample_size(0.5, 0.95, std::nullopt, 0.5), 4u);
    EXPECT_EQ(required_sample_size(0.05, 0.95, std::nullopt, 0.0), 1u);
}

TEST(RequiredSampleSize, FinitePopulation) {
    // n0 = 385 at e = 0.05; N = 1000 -> ceil(385 / (1 + 384/1000)) = 279
    EXPECT_EQ(required_sample_size(0.05, 0.95, std::nullopt, 0.5), 385u);
    EXPECT_EQ(required_sample_size(0.05, 0.95, 1000, 0.5), 279u);
    EXPECT_EQ(required_sample_size(0.01, 0.95, 50, 0.5), 50u);
    EXPECT_EQ(required_sample_size(0.3, 0.95, 1, 0.5), 1u);
}

TEST(RequiredSampleSize, Errors) {
    EXPECT_THROW(required_sample_size(0.0, 0.95, std::nullopt, 0.5), ArgumentError);
    EXPECT_THROW(required_sample_size(0.1, 0.95, std::nullopt, 1.5), ArgumentError);
    EXPECT_THROW(required_sample_size(0.1, 0.95, 0, 0.5), ArgumentError);
}

TEST(ProportionMargin, Examples) {
    EXPECT_NEAR(proportion_margin(100, 0.95, std::nullopt, 0.5), 0.0980, 1e-4);
    EXPECT_NEAR(proportion_margin(100, 0.95, std::nullopt, 0.5), formula_margin(kZ95, 100, 0.5), 1e-12);
    EXPECT_EQ(proportion_margin(250, 0.95, 250, 0.3), 0.0);
    EXPECT_NEAR(proportion_margin(100, 0.95, std::nullopt, 0.1494), 0.0699, 1e-4);
    EXPECT_NEAR(proportion_margin(100, 0.95, 1000, 0.1494), formula_margin(kZ95, 100, 0.1494, 1000), 1e-12);
    EXPECT_THROW(proportion_margin(0, 0.95, std::nullopt, 0.5), ArgumentError);
    EXPECT_THROW(proportion_margin(11, 0.95, 10, 0.5), ArgumentError);
}

TEST(ProportionMargin, ConsistentWithRequiredSize) {
    for (double e : {0.01, 0.03, 0.0739, 0.098, 0.2})
        for (double c : {0.8, 0.9, 0.95, 0.99})
            for (std::optional<std::size_t> big_n : {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                                                     std::optional<std::size_t>{37}, std::optional<std::size_t>{5000}})
                for (double p : {0.0, 0.1494, 0.5, 0.9}) {
                    auto n = required_sample_size(e, c, big_n, p);
                    EXPECT_LE(proportion_margin(n, c, big_n, p), e + 1e-12) << e << ' ' << c << ' ' << p;
                    // infinite population: n is minimal
                    if (!big_n && n > 1 && p > 0.0)
                        EXPECT_GT(proportion_margin(n - 1, c, big_n, p), e - 1e-12) << e << ' ' << c << ' ' << p;
                }
}

TEST(EstimateProportion, FillsFields) {
    auto est = estimate_proportion(15, 100, 0.95);
    EXPECT_DOUBLE_EQ(est.p_hat, 0.15);
    EXPECT_NEAR(est.margin, formula_margin(kZ95, 100, 0.15), 1e-12);
    EXPECT_THROW(estimate_proportion(5, 4, 0.95), ArgumentError);
}
