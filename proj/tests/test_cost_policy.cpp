#include <gtest/gtest.h>

#include <map>
#include <set>
#include <random>

#include "alsvm/cost_policy.hpp"
#include "alsvm/error.hpp"
#include "test_util.hpp"

using namespace alsvm;
using namespace alsvm::testutil;

namespace {

Dataset counts_dataset(std::size_t pos, std::size_t neg) {
    Dataset d;
    for (std::size_t i = 0; i < pos; ++i) d.push_back(ex(kPos, {{1, double(i + 1)}}));
    for (std::size_t i = 0; i < neg; ++i) d.push_back(ex(kNeg, {{2, double(i + 1)}}));
    return d;
}

}  // namespace

TEST(MorikPa, Examples) {
    EXPECT_NEAR(morik_pa(85, 15), 5.6667, 5e-5);
    // corpus-level ratio at 14.94% positives
    EXPECT_NEAR(morik_pa(8506, 1494), 5.6934, 5e-5);
    EXPECT_THROW(morik_pa(10, 0), UndefinedRatioError);
    EXPECT_THROW(morik_pa(0, 10), UndefinedRatioError);
}

TEST(MorikPa, ScaleFree) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        std::size_t neg = 1 + rng() % 1000, pos = 1 + rng() % 1000, k = 1 + rng() % 50;
        EXPECT_DOUBLE_EQ(morik_pa(neg * k, pos * k), morik_pa(neg, pos));
    }
}

TEST(CostPolicy, ParseAndPrint) {
    for (std::string s : {"initpa", "currentpa", "balanced", "oversample", "fixed:2.5"})
        EXPECT_EQ(CostPolicy::parse(s).to_string(), s);
    EXPECT_EQ(CostPolicy::parse("fixed:4").fixed_value(), 4.0);
    EXPECT_THROW(CostPolicy::parse("fixed:"), ConfigError);
    EXPECT_THROW(CostPolicy::parse("fixed:-1"), ArgumentError);
    EXPECT_THROW(CostPolicy::parse("bootos"), ConfigError);
}

TEST(PolicyPa, CurrentPaUsesLabeledCounts) {
    auto d = counts_dataset(5, 15);
    EXPECT_DOUBLE_EQ(policy_pa(CostPolicy::current_pa(), d, 3).pa, 3.0);
}

TEST(PolicyPa, InitPaFrozenAcrossRounds) {
    auto seed = counts_dataset(1494, 8506);
    auto p = CostPolicy::init_pa().initialized(seed);
    ASSERT_TRUE(p.frozen_pa());
    EXPECT_NEAR(*p.frozen_pa(), 5.6934, 5e-5);
    for (std::size_t round = 0; round < 10; ++round) {
        auto other = counts_dataset(1 + round * 7, 2 + round);
        EXPECT_EQ(policy_pa(p, other, round).pa, *p.frozen_pa());
    }
    EXPECT_THROW(policy_pa(CostPolicy::init_pa(), seed, 0), ConfigError);
    EXPECT_THROW(CostPolicy::init_pa().initialized(counts_dataset(3, 0)), ConfigError);
}

TEST(PolicyPa, ConstantPolicies) {
    auto d = counts_dataset(2, 30);
    EXPECT_EQ(policy_pa(CostPolicy::balanced(), d, 0).pa, 1.0);
    EXPECT_EQ(policy_pa(CostPolicy::oversample_duplicate(), d, 0).pa, 1.0);
    EXPECT_EQ(policy_pa(CostPolicy::fixed_pa(7.5), d, 4).pa, 7.5);
    // initialized() leaves non-InitPA kinds alone
    EXPECT_EQ(CostPolicy::balanced().initialized(d), CostPolicy::balanced());
}

TEST(PolicyPa, CurrentPaSingleClassFallback) {
    auto pos_only = counts_dataset(4, 0);
    auto r = policy_pa(CostPolicy::current_pa(), pos_only, 5, 2.5);
    EXPECT_EQ(r.pa, 2.5);
    EXPECT_TRUE(r.fallback);
    EXPECT_THROW(policy_pa(CostPolicy::current_pa(), pos_only, 0), ConfigError);
    EXPECT_FALSE(policy_pa(CostPolicy::current_pa(), counts_dataset(1, 1), 1, 9.0).fallback);
}

TEST(Oversample, ExactDivision) {
    auto out = oversample_duplicate(counts_dataset(2, 8), 1);
    EXPECT_EQ(class_counts(out), (ClassCounts{8, 8}));
    std::map<double, int> copies;
    for (const auto& e : out.examples())
        if (e.label == kPos) ++copies[e.features.values()[0]];
    EXPECT_EQ(copies[1.0], 4);
    EXPECT_EQ(copies[2.0], 4);
}

TEST(Oversample, RemainderRule) {
    auto in = counts_dataset(3, 8);
    auto out = oversample_duplicate(in, 77);
    EXPECT_EQ(class_counts(out), (ClassCounts{8, 8}));
    std::map<double, int> copies;
    for (const auto& e : out.examples())
        if (e.label == kPos) ++copies[e.features.values()[0]];
    std::multiset<int> multiplicities;
    for (auto [k, v] : copies) multiplicities.insert(v);
    EXPECT_EQ(multiplicities, (std::multiset<int>{2, 3, 3}));
    // seeded
    EXPECT_EQ(oversample_duplicate(in, 77), out);
    // originals first, in order
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(out[i], in[i]);
}

TEST(Oversample, BalancedUnchangedAndErrors) {
    auto d = counts_dataset(5, 5);
    EXPECT_EQ(oversample_duplicate(d, 3), d);
    EXPECT_THROW(oversample_duplicate(counts_dataset(0, 4), 1), ArgumentError);
    EXPECT_THROW(oversample_duplicate(counts_dataset(4, 0), 1), ArgumentError);
}

TEST(Oversample, ExactBalanceProperty) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t pos = 1 + rng() % 30, neg = pos + rng() % 200;
        auto in = counts_dataset(pos, neg);
        auto out = oversample_duplicate(in, rng());
        auto c = class_counts(out);
        EXPECT_EQ(c.n_pos, c.n_neg);
        EXPECT_EQ(c.n_neg, neg);
        // every positive appears floor(neg/pos) or floor(neg/pos)+1 times
        std::map<double, std::size_t> copies;
        for (const auto& e : out.examples())
            if (e.label == kPos) ++copies[e.features.values()[0]];
        ASSERT_EQ(copies.size(), pos);
        for (auto [k, v] : copies) {
            EXPECT_GE(v, neg / pos);
            EXPECT_LE(v, neg / pos + 1);
        }
    }
}
